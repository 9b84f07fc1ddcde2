// Copyright 2026 The divsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "divsum/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "divsum/parallel.hpp"
#include "divsum/scoring.hpp"

namespace divsum {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Inputs come from files, so precondition failures while loading them are
// data errors rather than usage errors.
template <typename F>
auto as_data(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidInput) throw_data(e.what());
    throw;
  }
}

bool needs_control(const std::string& name) {
  return name == "qs_balanced" || name == "dds" || name == "ds" ||
         name == "mmr_balanced";
}

bool needs_partitions(const std::string& name) {
  return name == "autolabel" || name == "autolabel_rwd";
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  if (std::isinf(*v)) return *v < 0 ? "-inf" : "inf";
  return format_double(*v);
}

const char* scorer_name(ScorerKind kind) {
  return kind == ScorerKind::kReferenceSet ? "reference_set"
                                           : "external_scores";
}

json selection_json(const SelectionConfig& s) {
  return {{"m", s.m},       {"alpha", s.alpha},
          {"balanced_alpha", s.balanced_alpha},
          {"beta", s.beta}, {"mmr_alpha", s.mmr_alpha},
          {"c", s.c},       {"u", s.u},
          {"l", s.l}};
}

std::tuple<std::size_t, double, double, double, double, double, std::string>
sort_key(const AlgorithmSpec& s) {
  const auto& p = s.params;
  double weight = p.alpha;
  if (s.name == "mmr_balanced") weight = p.balanced_alpha;
  if (s.name == "mmr") weight = p.mmr_alpha;
  return {p.m, weight, p.beta, p.c, p.u, p.l, s.partition};
}

json section(const Session& session, const AlgorithmSpec& spec,
             const Summary& summary) {
  json out;
  out["algorithm"] = spec.name;
  out["parameters"] = algorithm_parameters(spec);
  out["summary"] = to_json(summary);
  out["metrics"] = to_json(session.evaluate(summary));
  out["notes"] = summary.notes;
  return out;
}

}  // namespace

json to_json(const Metrics& m) {
  json out;
  out["size"] = m.size;
  out["anti_stereotypical_fraction"] = optional_number(m.anti_stereotypical);
  out["accuracy_avgsim"] = optional_number(m.accuracy_avgsim);
  out["accuracy_attribute"] = optional_number(m.accuracy_attribute);
  out["gender_coverage"] = optional_number(m.gender_coverage);
  out["gender_fractions"] = m.gender_fractions;
  out["skintone_fractions"] = m.skintone_fractions;
  if (m.intersectional) {
    const auto& t = *m.intersectional;
    out["intersectional"] = {{"stereotypical_fair", t.stereo_fair},
                             {"stereotypical_dark", t.stereo_dark},
                             {"anti_stereotypical_fair", t.anti_fair},
                             {"anti_stereotypical_dark", t.anti_dark},
                             {"unlabeled", t.unlabeled}};
  } else {
    out["intersectional"] = nullptr;
  }
  out["nonredundancy_logdet"] = optional_number(m.nonredundancy_logdet);
  out["selected_by"] = m.selected_by;
  out["notes"] = m.notes;
  return out;
}

json to_json(const Summary& summary) {
  json out = json::array();
  for (std::size_t i = 0; i < summary.size(); ++i) {
    const auto& e = summary.entries[i];
    out.push_back({{"rank", i + 1},
                   {"id", e.id},
                   {"selected_by", e.selected_by},
                   {"score", e.score},
                   {"round", e.round}});
  }
  return out;
}

Session::Session(RunConfig config)
    : config_(std::move(config)),
      dataset_(as_data([&] { return load_embeddings(config_.embeddings.resolved); })),
      query_(as_data([&] { return build_query(config_.query); })) {
  qscores_ = as_data([&] { return divsum::query_scores(query_, dataset_); });

  auto digest = [&](const std::string& role, const PathRef& ref) {
    if (!ref.empty()) {
      inputs_.push_back({role, ref.written, sha256_file(ref.resolved)});
    }
  };
  digest("embeddings", config_.embeddings);
  digest("query", config_.query.source);
  if (config_.query.scorer == ScorerKind::kReferenceSet) {
    digest("query_reference", config_.query.reference);
  } else {
    digest("query_scores", config_.query.scores);
  }

  if (!config_.labels.empty()) {
    labels_ = load_labels(config_.labels.resolved);
    digest("labels", config_.labels);
  }

  if (!config_.control.empty()) {
    std::optional<Dataset> pool;
    if (!config_.control_pool.empty()) {
      pool = load_embeddings(config_.control_pool.resolved);
      digest("control_pool", config_.control_pool);
    }
    control_ = load_control_set(config_.control.resolved,
                                pool ? *pool : dataset_);
    digest("control", config_.control);
    if (control_->dim() != dataset_.dim()) {
      throw_data("control set dimension " + std::to_string(control_->dim()) +
                 " does not match embedding dimension " +
                 std::to_string(dataset_.dim()));
    }
    if (2 * control_->size() > dataset_.size()) {
      throw_data("control set has " + std::to_string(control_->size()) +
                 " images; at most half the dataset (" +
                 std::to_string(dataset_.size() / 2) + ") is allowed");
    }
    if (control_->size() > kLargeControlSet) {
      warnings_.push_back("control set has " +
                          std::to_string(control_->size()) +
                          " images; small control sets are expected");
    }
    divmatrix_ = diversity_matrix(dataset_, *control_);
  }

  if (!config_.partition_labels.empty()) {
    partitions_ = load_partition_labels(config_.partition_labels.resolved);
    digest("partition_labels", config_.partition_labels);
    std::size_t missing = 0;
    std::string first;
    for (const auto& item : dataset_.items()) {
      if (!partitions_->group_of.count(item.id())) {
        if (missing++ == 0) first = item.id();
      }
    }
    if (missing > 0) {
      throw_data(config_.partition_labels.written + ": " +
                 std::to_string(missing) +
                 " dataset ids have no partition label (first: '" + first +
                 "')");
    }
  }

  if (config_.sweep) {
    for (const auto& g : config_.sweep->groups) {
      digest("control_pool:" + g.name, g.pool);
    }
  }

  for (const auto& spec : config_.algorithms) {
    if (needs_control(spec.name) && !control_) {
      throw_data("algorithm '" + spec.name +
                 "' needs a control set (config key 'control')");
    }
    if (needs_partitions(spec.name) && !partitions_) {
      throw_data("algorithm '" + spec.name +
                 "' needs partition labels (config key 'partition_labels')");
    }
    if (spec.params.m > dataset_.size()) {
      throw_data("summary size " + std::to_string(spec.params.m) +
                 " for '" + spec.name + "' exceeds the dataset size " +
                 std::to_string(dataset_.size()));
    }
  }
  std::sort(inputs_.begin(), inputs_.end(),
            [](const InputDigest& a, const InputDigest& b) {
              return a.role < b.role;
            });
}

const DiversityControlSet& Session::control() const {
  if (!control_) throw_data("no control set configured (config key 'control')");
  return *control_;
}

Summary Session::run(const AlgorithmSpec& spec) const {
  return run_with(spec, control_ ? &*control_ : nullptr,
                  divmatrix_ ? &*divmatrix_ : nullptr);
}

Summary Session::run(const AlgorithmSpec& spec,
                     const DiversityControlSet& control) const {
  const auto divmatrix = diversity_matrix(dataset_, control);
  return run_with(spec, &control, &divmatrix);
}

Summary Session::run_with(const AlgorithmSpec& spec,
                          const DiversityControlSet* control,
                          const DiversityMatrix* divmatrix) const {
  const auto name = canonical_algorithm(spec.name);
  const auto& p = spec.params;
  if (needs_control(name) && !control) {
    throw_data("algorithm '" + name +
               "' needs a control set (config key 'control')");
  }
  if (needs_partitions(name) && !partitions_) {
    throw_data("algorithm '" + name +
               "' needs partition labels (config key 'partition_labels')");
  }
  if (name == "qs") return qs_top(qscores_, dataset_, p.m);
  if (name == "qs_balanced") {
    return qs_balanced(ds_scores(dataset_, qscores_, *divmatrix, p.alpha), p.m);
  }
  if (name == "ds") return ds_top(dataset_, qscores_, *divmatrix, p.m);
  if (name == "dds") {
    const auto scores = ds_scores(dataset_, qscores_, *divmatrix, p.alpha);
    const auto partition = spec.partition == "closest_control"
                               ? closest_control_partition(dataset_, *control)
                               : round_robin_partition(scores);
    return dds_iterative(scores, p.m, DdsParams{p.u, p.l}, partition);
  }
  if (name == "mmr_balanced") {
    return mmr_balanced(dataset_, qscores_, *control,
                        MmrBalancedParams{p.balanced_alpha, p.beta}, p.m);
  }
  if (name == "mmr") return mmr(dataset_, qscores_, p.mmr_alpha, p.m);
  if (name == "det") return det_greedy(dataset_, qscores_, p.c, p.m);
  if (name == "autolabel") {
    return as_data([&] { return autolabel(dataset_, qscores_, *partitions_, p.m); });
  }
  return as_data(
      [&] { return autolabel_rwd(dataset_, qscores_, *partitions_, p.m); });
}

Summary Session::rank(double alpha) const {
  check_unit_interval(alpha, "alpha");
  if (!divmatrix_) throw_data("ranking needs a control set (config key 'control')");
  return rank_all(ds_scores(dataset_, qscores_, *divmatrix_, alpha));
}

Metrics Session::evaluate(const Summary& summary) const {
  Metrics m;
  m.size = summary.size();
  m.nonredundancy_logdet = nonredundancy_logdet(summary, dataset_);
  for (const auto& e : summary.entries) ++m.selected_by[e.selected_by];
  if (const auto* refs = std::get_if<ReferenceSet>(&query_.scorer)) {
    m.accuracy_avgsim = accuracy_avgsim(summary, dataset_, refs->refs);
  }
  if (!labels_) return m;

  const auto& ev = config_.evaluation;
  m.gender_coverage = label_coverage(summary, *labels_, ev.gender_attribute);
  m.gender_fractions = group_fractions(summary, *labels_, ev.gender_attribute);
  m.skintone_fractions =
      group_fractions(summary, *labels_, ev.skintone_attribute);
  if (summary.size() > 0 && *m.gender_coverage == 0.0) {
    m.notes.push_back("no labeled images in the summary");
  }
  const auto gt = query_.ground_truth.find(ev.gender_attribute);
  if (gt != query_.ground_truth.end()) {
    if (gt->second == "male" || gt->second == "female") {
      m.anti_stereotypical = anti_stereotypical_fraction(
          summary, *labels_, gt->second, ev.denominator, ev.gender_attribute);
      m.intersectional =
          intersectional_table(summary, *labels_, gt->second,
                               ev.gender_attribute, ev.skintone_attribute);
    } else {
      m.notes.push_back("ground truth '" + gt->second +
                        "' has no binary complement; anti-stereotypical "
                        "fraction not computed");
    }
  }
  if (!query_.attribute.empty()) {
    m.accuracy_attribute =
        accuracy_attribute(summary, *labels_, query_.attribute);
  }
  return m;
}

Summary Session::load_summary(const std::string& path) const {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> id_col;
  std::set<std::string> seen;
  Summary out;
  auto fail = [&](const std::string& what) {
    throw_data(path + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (!id_col) {
      const auto it = std::find(fields.begin(), fields.end(), "id");
      if (it == fields.end()) fail("header needs an 'id' column");
      id_col = static_cast<std::size_t>(it - fields.begin());
      continue;
    }
    if (*id_col >= fields.size() || fields[*id_col].empty()) fail("missing id");
    const auto& id = fields[*id_col];
    if (!dataset_.find(id)) fail("id '" + id + "' is not in the embeddings");
    if (!seen.insert(id).second) fail("duplicate id '" + id + "'");
    out.entries.push_back({id, std::string(kQueryOnly), 0.0, out.size()});
  }
  if (!id_col) throw_data(path + ": file is empty");
  if (out.size() == 0) throw_data(path + ": summary has no ids");
  return out;
}

DiversityControlSet Session::compose_control_set(const SweepConfig& sweep,
                                                 double share) const {
  if (sweep.groups.size() != 2) {
    throw_data("control_composition sweep needs exactly two groups");
  }
  if (sweep.control_size == 0) throw_data("control_size must be positive");
  check_unit_interval(share, "composition share");
  const auto first_count = static_cast<std::size_t>(
      std::llround(share * static_cast<double>(sweep.control_size)));
  const std::size_t counts[2] = {first_count, sweep.control_size - first_count};
  std::vector<FeatureVector> items;
  for (std::size_t g = 0; g < 2; ++g) {
    if (counts[g] == 0) continue;
    const auto pool = load_control_set(sweep.groups[g].pool.resolved, dataset_);
    if (pool.size() < counts[g]) {
      throw_data("group '" + sweep.groups[g].name + "' pool has " +
                 std::to_string(pool.size()) + " images, needs " +
                 std::to_string(counts[g]));
    }
    for (std::size_t j = 0; j < counts[g]; ++j) items.push_back(pool[j]);
  }
  return as_data([&] { return DiversityControlSet(std::move(items)); });
}

json algorithm_parameters(const AlgorithmSpec& spec) {
  const auto& p = spec.params;
  json out;
  out["m"] = p.m;
  if (spec.name == "qs_balanced") {
    out["alpha"] = p.alpha;
  } else if (spec.name == "dds") {
    out["alpha"] = p.alpha;
    out["u"] = p.u;
    out["l"] = p.l;
    out["partition"] = spec.partition;
  } else if (spec.name == "mmr_balanced") {
    out["alpha"] = p.balanced_alpha;
    out["beta"] = p.beta;
  } else if (spec.name == "mmr") {
    out["alpha"] = p.mmr_alpha;
  } else if (spec.name == "det") {
    out["c"] = p.c;
  }
  return out;
}

bool section_before(const AlgorithmSpec& a, const AlgorithmSpec& b) {
  if (a.name != b.name) return a.name < b.name;
  return sort_key(a) < sort_key(b);
}

void set_alpha(AlgorithmSpec& spec, double alpha) {
  if (spec.name == "mmr_balanced") {
    spec.params.balanced_alpha = alpha;
  } else if (spec.name == "mmr") {
    spec.params.mmr_alpha = alpha;
  } else {
    spec.params.alpha = alpha;
  }
}

json report_header(const Session& session, const std::string& kind) {
  const auto& cfg = session.config();
  json out;
  out["schema"] = kReportSchema;
  out["kind"] = kind;
  out["generator"] = std::string("divsum ") + kVersion;
  json inputs = json::array();
  for (const auto& in : session.inputs()) {
    inputs.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  }
  out["inputs"] = inputs;
  json query;
  query["name"] = cfg.query.name;
  query["scorer"] = scorer_name(cfg.query.scorer);
  query["normalize_external"] = cfg.query.normalize_external;
  query["ground_truth"] = cfg.query.ground_truth;
  query["attribute"] = cfg.query.attribute;
  json config;
  config["seed"] = cfg.seed;
  config["query"] = query;
  config["selection"] = selection_json(cfg.selection);
  config["evaluation"] = {
      {"denominator", cfg.evaluation.denominator == Denominator::kSummary
                          ? "summary"
                          : "labeled"},
      {"gender_attribute", cfg.evaluation.gender_attribute},
      {"skintone_attribute", cfg.evaluation.skintone_attribute}};
  out["config"] = config;
  out["dataset"] = {{"size", session.dataset().size()},
                    {"dim", session.dataset().dim()},
                    {"control_size",
                     session.has_control() ? session.control().size() : 0}};
  out["warnings"] = session.warnings();
  return out;
}

json run_summarize(const Session& session, const AlgorithmSpec& spec) {
  auto out = report_header(session, "summarize");
  out["sections"] = json::array({section(session, spec, session.run(spec))});
  return out;
}

json run_compare(const Session& session) {
  const auto& specs = session.config().algorithms;
  std::vector<json> sections(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    sections[i] = section(session, specs[i], session.run(specs[i]));
  });
  std::vector<std::size_t> order(specs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return section_before(specs[a], specs[b]);
  });
  auto out = report_header(session, "compare");
  out["sections"] = json::array();
  for (std::size_t i : order) out["sections"].push_back(std::move(sections[i]));
  return out;
}

json run_evaluate(const Session& session, const Summary& summary,
                  const std::string& label) {
  auto out = report_header(session, "evaluate");
  json s;
  s["algorithm"] = label;
  s["parameters"] = json::object();
  s["summary"] = to_json(summary);
  s["metrics"] = to_json(session.evaluate(summary));
  s["notes"] = json::array();
  out["sections"] = json::array({s});
  return out;
}

SweepResult run_sweep(const Session& session, const SweepConfig& sweep) {
  if (sweep.parameter.empty()) throw_invalid("sweep needs a parameter");
  if (sweep.values.empty()) throw_invalid("sweep needs at least one value");
  const auto algorithm = canonical_algorithm(sweep.algorithm);

  AlgorithmSpec base{algorithm, session.config().selection, "round_robin"};
  for (const auto& spec : session.config().algorithms) {
    if (spec.name == algorithm) {
      base = spec;
      break;
    }
  }

  std::vector<double> values = sweep.values;
  std::stable_sort(values.begin(), values.end());
  std::vector<AlgorithmSpec> specs(values.size(), base);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (sweep.parameter == "alpha") {
      check_unit_interval(v, "alpha");
      set_alpha(specs[i], v);
      validate_selection(specs[i].params);
    } else if (sweep.parameter == "summary_size") {
      if (!(v >= 1.0) || v != std::floor(v)) {
        throw_invalid("summary sizes must be positive integers");
      }
      specs[i].params.m = static_cast<std::size_t>(v);
    } else if (sweep.parameter == "control_composition") {
      check_unit_interval(v, "composition share");
    } else {
      throw_invalid("unknown sweep parameter '" + sweep.parameter + "'");
    }
  }

  struct Row {
    Summary summary;
    Metrics metrics;
    std::vector<std::string> control_ids;
  };
  std::vector<Row> rows(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    auto& row = rows[i];
    if (sweep.parameter == "control_composition") {
      const auto control = session.compose_control_set(sweep, values[i]);
      for (const auto& item : control.items().items()) {
        row.control_ids.push_back(item.id());
      }
      row.summary = session.run(specs[i], control);
    } else {
      row.summary = session.run(specs[i]);
    }
    row.metrics = session.evaluate(row.summary);
  });

  SweepResult result;
  auto& report = result.report;
  report = report_header(session, "sweep");
  report["sweep"] = {{"parameter", sweep.parameter},
                     {"algorithm", algorithm},
                     {"values", values}};
  if (sweep.parameter == "control_composition") {
    json groups = json::array();
    for (const auto& g : sweep.groups) {
      groups.push_back({{"name", g.name}, {"pool", g.pool.written}});
    }
    report["sweep"]["control_size"] = sweep.control_size;
    report["sweep"]["groups"] = groups;
  }
  report["sections"] = json::array();

  std::string csv =
      "parameter,value,algorithm,m,anti_stereotypical_fraction,"
      "accuracy_avgsim,accuracy_attribute,gender_coverage,"
      "nonredundancy_logdet,control_ids\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& row = rows[i];
    json s;
    s["algorithm"] = algorithm;
    s["parameters"] = algorithm_parameters(specs[i]);
    s["value"] = values[i];
    if (sweep.parameter == "control_composition") {
      s["control_set"] = row.control_ids;
    }
    s["summary"] = to_json(row.summary);
    s["metrics"] = to_json(row.metrics);
    s["notes"] = row.summary.notes;
    report["sections"].push_back(std::move(s));

    std::string ids;
    for (const auto& id : row.control_ids) ids += (ids.empty() ? "" : ";") + id;
    csv += sweep.parameter + "," + format_double(values[i]) + "," + algorithm +
           "," + std::to_string(specs[i].params.m) + "," +
           csv_number(row.metrics.anti_stereotypical) + "," +
           csv_number(row.metrics.accuracy_avgsim) + "," +
           csv_number(row.metrics.accuracy_attribute) + "," +
           csv_number(row.metrics.gender_coverage) + "," +
           csv_number(row.metrics.nonredundancy_logdet) + "," + ids + "\n";
  }
  result.csv = std::move(csv);
  return result;
}

std::string summary_csv(const Summary& summary) {
  std::string out = "rank,id,selected_by,score,round\n";
  for (std::size_t i = 0; i < summary.size(); ++i) {
    const auto& e = summary.entries[i];
    out += std::to_string(i + 1) + "," + e.id + "," + e.selected_by + "," +
           csv_number(e.score) + "," + std::to_string(e.round) + "\n";
  }
  return out;
}

std::string describe(const Session& session) {
  const auto& cfg = session.config();
  std::ostringstream out;
  out << "config: " << cfg.path << "\n";
  out << "embeddings: " << session.dataset().size() << " items, dimension "
      << session.dataset().dim() << "\n";
  out << "query: " << cfg.query.name << " (" << scorer_name(cfg.query.scorer)
      << ")\n";
  if (session.has_control()) {
    out << "control set: " << session.control().size() << " images\n";
  }
  if (const auto* labels = session.labels()) {
    out << "labels: " << labels->size() << " labeled ids\n";
  }
  out << "algorithms:";
  for (const auto& spec : cfg.algorithms) out << " " << spec.name;
  out << "\n";
  for (const auto& w : session.warnings()) out << "warning: " << w << "\n";
  out << "ok\n";
  return out.str();
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

std::vector<std::string> write_synth_bundle(const SynthConfig& cfg,
                                            const std::string& out_dir,
                                            EmbeddingFormat format,
                                            std::size_t balanced) {
  const auto inst = generate(cfg);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw_io("cannot create '" + out_dir + "': " + ec.message());
  const fs::path dir(out_dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name) {
    written.push_back(name);
    return (dir / name).string();
  };

  const std::vector<std::string> meta = {
      std::string("generator: ") + inst.generator,
      "seed: " + std::to_string(cfg.seed)};
  const std::string emb_name =
      format == EmbeddingFormat::kBinary ? "embeddings.dvsm" : "embeddings.csv";
  save_embeddings(inst.dataset, put(emb_name), format, meta);
  save_labels(inst.labels, inst.dataset, {cfg.attribute, "relevant"},
              put("labels.csv"));
  save_embeddings(std::get<ReferenceSet>(inst.query.scorer).refs,
                  put("query_refs.csv"), EmbeddingFormat::kCsv, meta);
  for (const auto& [name, pool] : inst.control_candidates) {
    save_embeddings(pool, put("control_" + name + ".csv"),
                    EmbeddingFormat::kCsv, meta);
  }
  save_embeddings(balanced_control_set(inst, balanced).items(),
                  put("control.csv"), EmbeddingFormat::kCsv, meta);

  // The planted groups double as a perfect stand-in classifier.
  std::string partitions = "id,label\n";
  for (const auto& item : inst.dataset.items()) {
    partitions += item.id() + "," +
                  std::string(inst.labels.get(item.id(), cfg.attribute)) + "\n";
  }
  write_file(put("partitions.csv"), partitions);

  const std::size_t m = std::max<std::size_t>(1, std::min<std::size_t>(50, cfg.n / 4));
  YAML::Emitter y;
  y << YAML::BeginMap;
  y << YAML::Key << "embeddings" << YAML::Value << emb_name;
  y << YAML::Key << "labels" << YAML::Value << "labels.csv";
  y << YAML::Key << "control" << YAML::Value << "control.csv";
  y << YAML::Key << "partition_labels" << YAML::Value << "partitions.csv";
  y << YAML::Key << "query" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "name" << YAML::Value << inst.query.name;
  y << YAML::Key << "scorer" << YAML::Value << "reference_set";
  y << YAML::Key << "reference" << YAML::Value << "query_refs.csv";
  y << YAML::Key << "ground_truth" << YAML::Value << YAML::BeginMap;
  for (const auto& [k, v] : inst.query.ground_truth) {
    y << YAML::Key << k << YAML::Value << v;
  }
  y << YAML::EndMap;
  y << YAML::Key << "attribute" << YAML::Value << inst.query.attribute;
  y << YAML::EndMap;
  y << YAML::Key << "selection" << YAML::Value << YAML::BeginMap;
  y << YAML::Key << "m" << YAML::Value << m;
  y << YAML::EndMap;
  y << YAML::Key << "algorithms" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const char* a : {"qs_balanced", "mmr_balanced", "dds", "qs", "ds", "mmr",
                        "det", "autolabel", "autolabel_rwd"}) {
    y << a;
  }
  y << YAML::EndSeq;
  y << YAML::Key << "seed" << YAML::Value << cfg.seed;
  if (inst.control_candidates.size() == 2) {
    const auto& c = inst.control_candidates;
    const std::size_t minority = c[0].first == inst.majority ? 1 : 0;
    y << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    y << YAML::Key << "parameter" << YAML::Value << "control_composition";
    y << YAML::Key << "algorithm" << YAML::Value << "qs_balanced";
    y << YAML::Key << "values" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << 0.0 << 0.25 << 0.5 << 0.75 << 1.0 << YAML::EndSeq;
    y << YAML::Key << "control_size" << YAML::Value << 4;
    y << YAML::Key << "groups" << YAML::Value << YAML::BeginSeq;
    for (std::size_t g : {minority, 1 - minority}) {
      y << YAML::Flow << YAML::BeginMap;
      y << YAML::Key << "name" << YAML::Value << c[g].first;
      y << YAML::Key << "pool" << YAML::Value << "control_" + c[g].first + ".csv";
      y << YAML::EndMap;
    }
    y << YAML::EndSeq;
    y << YAML::EndMap;
  }
  y << YAML::EndMap;
  write_file(put("run.yaml"), std::string(y.c_str()) + "\n");
  return written;
}

}  // namespace divsum
