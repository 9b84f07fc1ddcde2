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

#include "divsum/divsum.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <new>
#include <set>
#include <string>
#include <vector>

#include "divsum/config.hpp"
#include "divsum/experiment.hpp"
#include "divsum/io.hpp"
#include "divsum/replicate.hpp"
#include "divsum/scoring.hpp"
#include "divsum/selection.hpp"
#include "divsum/similarity.hpp"
#include "divsum/synthgen.hpp"

namespace ds = divsum;

struct dvs_dataset {
  ds::Dataset value;
};

struct dvs_control_set {
  ds::DiversityControlSet value;
};

struct dvs_summary {
  ds::Summary value;
};

struct dvs_session {
  ds::RunConfig config;
  std::map<std::string, double> overrides;
  std::unique_ptr<ds::Session> session;
};

namespace {

thread_local std::string g_last_error;

dvs_status fail(dvs_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
dvs_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return DVS_OK;
  } catch (const ds::Error& e) {
    switch (e.code()) {
      case ds::ErrorCode::kInvalidInput:
        return fail(DVS_ERR_INVALID, e.what());
      case ds::ErrorCode::kData:
        return fail(DVS_ERR_DATA, e.what());
      case ds::ErrorCode::kIo:
        return fail(DVS_ERR_IO, e.what());
    }
    return fail(DVS_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DVS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DVS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DVS_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (!p) ds::throw_invalid(std::string(name) + " must not be NULL");
}

char* to_c_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

ds::SelectionConfig to_config(const dvs_params* p) {
  ds::SelectionConfig cfg;
  if (p) {
    cfg.m = p->m;
    cfg.alpha = p->alpha;
    cfg.balanced_alpha = p->balanced_alpha;
    cfg.beta = p->beta;
    cfg.mmr_alpha = p->mmr_alpha;
    cfg.c = p->c;
    cfg.u = p->u;
    cfg.l = p->l;
  }
  return cfg;
}

void set_field(ds::SelectionConfig& cfg, const std::string& name, double v) {
  if (name == "m") {
    if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
      ds::throw_invalid("m must be a positive integer");
    }
    cfg.m = static_cast<std::size_t>(v);
  } else if (name == "alpha") {
    cfg.alpha = v;
  } else if (name == "balanced_alpha") {
    cfg.balanced_alpha = v;
  } else if (name == "beta") {
    cfg.beta = v;
  } else if (name == "mmr_alpha") {
    cfg.mmr_alpha = v;
  } else if (name == "c") {
    cfg.c = v;
  } else if (name == "u") {
    cfg.u = v;
  } else if (name == "l") {
    cfg.l = v;
  } else {
    ds::throw_invalid("unknown parameter '" + name + "'");
  }
}

void apply_overrides(const std::map<std::string, double>& overrides,
                     ds::AlgorithmSpec& spec) {
  for (const auto& [name, v] : overrides) {
    if (name == "alpha") {
      ds::set_alpha(spec, v);
    } else {
      set_field(spec.params, name, v);
    }
  }
  ds::validate_selection(spec.params);
}

ds::Session& session_of(dvs_session* s) {
  require(s, "session");
  if (!s->session) {
    auto cfg = s->config;
    for (const auto& [name, v] : s->overrides) set_field(cfg.selection, name, v);
    ds::validate_selection(cfg.selection);
    for (auto& spec : cfg.algorithms) apply_overrides(s->overrides, spec);
    s->session = std::make_unique<ds::Session>(std::move(cfg));
  }
  return *s->session;
}

ds::AlgorithmSpec pick_algorithm(dvs_session* s, const char* algorithm) {
  auto& session = session_of(s);
  const auto& specs = session.config().algorithms;
  if (!algorithm) return specs.front();
  const auto name = ds::canonical_algorithm(algorithm);
  for (const auto& spec : specs) {
    if (spec.name == name) return spec;
  }
  ds::AlgorithmSpec spec{name, s->config.selection, "round_robin"};
  apply_overrides(s->overrides, spec);
  return spec;
}

void check_m(const ds::Session& session, const ds::AlgorithmSpec& spec) {
  if (spec.params.m > session.dataset().size()) {
    ds::throw_invalid("summary size " + std::to_string(spec.params.m) +
                      " exceeds the dataset size " +
                      std::to_string(session.dataset().size()));
  }
}

std::vector<ds::SynthGroup> parse_groups(const std::string& text) {
  std::vector<ds::SynthGroup> groups;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma - start);
    std::vector<std::string> parts;
    std::size_t p = 0;
    while (true) {
      const auto colon = item.find(':', p);
      parts.push_back(item.substr(p, colon - p));
      if (colon == std::string::npos) break;
      p = colon + 1;
    }
    if (parts.size() != 4 || parts[0].empty()) {
      ds::throw_invalid("group '" + item +
                        "' must be name:proportion:direction_seed:spread");
    }
    try {
      std::size_t used = 0;
      ds::SynthGroup g;
      g.name = parts[0];
      g.proportion = std::stod(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument("proportion");
      g.direction_seed = std::stoull(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument("seed");
      g.spread = std::stod(parts[3], &used);
      if (used != parts[3].size()) throw std::invalid_argument("spread");
      groups.push_back(std::move(g));
    } catch (const std::logic_error&) {
      ds::throw_invalid("group '" + item + "' has a malformed number");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return groups;
}

}  // namespace

extern "C" {

const char* dvs_version(void) { return ds::kVersion; }

const char* dvs_last_error(void) { return g_last_error.c_str(); }

void dvs_string_free(char* s) { std::free(s); }

void dvs_params_default(dvs_params* params) {
  if (!params) return;
  const ds::SelectionConfig cfg;
  params->m = cfg.m;
  params->alpha = cfg.alpha;
  params->balanced_alpha = cfg.balanced_alpha;
  params->beta = cfg.beta;
  params->mmr_alpha = cfg.mmr_alpha;
  params->c = cfg.c;
  params->u = cfg.u;
  params->l = cfg.l;
}

dvs_status dvs_dataset_load(const char* path, dvs_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new dvs_dataset{ds::load_embeddings(path)};
  });
}

dvs_status dvs_dataset_create(const char* const* ids, const double* values,
                              size_t n, size_t dim, dvs_dataset** out) {
  return guarded([&] {
    require(out, "out");
    if (n == 0 || dim == 0) ds::throw_invalid("dataset must not be empty");
    require(ids, "ids");
    require(values, "values");
    std::vector<ds::FeatureVector> items;
    items.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      require(ids[i], "id");
      items.emplace_back(ids[i],
                         std::vector<double>(values + i * dim, values + (i + 1) * dim));
    }
    *out = new dvs_dataset{ds::Dataset(std::move(items))};
  });
}

size_t dvs_dataset_size(const dvs_dataset* dataset) {
  return dataset ? dataset->value.size() : 0;
}

size_t dvs_dataset_dim(const dvs_dataset* dataset) {
  return dataset ? dataset->value.dim() : 0;
}

void dvs_dataset_free(dvs_dataset* dataset) { delete dataset; }

dvs_status dvs_control_set_create(const dvs_dataset* items,
                                  dvs_control_set** out) {
  return guarded([&] {
    require(items, "items");
    require(out, "out");
    *out = new dvs_control_set{ds::DiversityControlSet(items->value.items())};
  });
}

dvs_status dvs_control_set_load(const char* path, const dvs_dataset* pool,
                                dvs_control_set** out) {
  return guarded([&] {
    require(path, "path");
    require(pool, "pool");
    require(out, "out");
    *out = new dvs_control_set{ds::load_control_set(path, pool->value)};
  });
}

size_t dvs_control_set_size(const dvs_control_set* control) {
  return control ? control->value.size() : 0;
}

void dvs_control_set_free(dvs_control_set* control) { delete control; }

dvs_status dvs_query_scores_reference(const dvs_dataset* dataset,
                                      const dvs_dataset* refs, double* out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(refs, "refs");
    require(out, "out");
    const ds::QuerySpec q{"query", ds::ReferenceSet{refs->value}, {}, "", false};
    const auto scores = ds::query_scores(q, dataset->value);
    std::copy(scores.begin(), scores.end(), out);
  });
}

dvs_status dvs_query_scores_external(const dvs_dataset* dataset,
                                     const char* const* ids,
                                     const double* probabilities, size_t count,
                                     int normalize, double* out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    if (count > 0) {
      require(ids, "ids");
      require(probabilities, "probabilities");
    }
    std::unordered_map<std::string, double> map;
    for (size_t i = 0; i < count; ++i) {
      require(ids[i], "id");
      if (!map.emplace(ids[i], probabilities[i]).second) {
        ds::throw_invalid(std::string("duplicate score id '") + ids[i] + "'");
      }
    }
    const ds::QuerySpec q{"query", ds::make_external_scores(std::move(map)),
                          {}, "", normalize != 0};
    const auto scores = ds::query_scores(q, dataset->value);
    std::copy(scores.begin(), scores.end(), out);
  });
}

dvs_status dvs_select(const char* algorithm, const dvs_dataset* dataset,
                      const double* qscores, const dvs_control_set* control,
                      const char* const* partitions, const dvs_params* params,
                      dvs_summary** out) {
  return guarded([&] {
    require(algorithm, "algorithm");
    require(dataset, "dataset");
    require(qscores, "qscores");
    require(out, "out");
    const auto name = ds::canonical_algorithm(algorithm);
    const auto cfg = to_config(params);
    ds::validate_selection(cfg);
    const auto& data = dataset->value;
    const std::span<const double> q(qscores, data.size());
    auto need_control = [&] {
      if (!control) ds::throw_invalid("algorithm '" + name + "' needs a control set");
      return ds::diversity_matrix(data, control->value);
    };
    ds::Summary s;
    if (name == "qs") {
      s = ds::qs_top(q, data, cfg.m);
    } else if (name == "qs_balanced") {
      s = ds::qs_balanced(ds::ds_scores(data, q, need_control(), cfg.alpha), cfg.m);
    } else if (name == "ds") {
      s = ds::ds_top(data, q, need_control(), cfg.m);
    } else if (name == "dds") {
      const auto scores = ds::ds_scores(data, q, need_control(), cfg.alpha);
      s = ds::dds_iterative(scores, cfg.m, ds::DdsParams{cfg.u, cfg.l});
    } else if (name == "mmr_balanced") {
      if (!control) ds::throw_invalid("algorithm 'mmr_balanced' needs a control set");
      s = ds::mmr_balanced(data, q, control->value,
                           ds::MmrBalancedParams{cfg.balanced_alpha, cfg.beta},
                           cfg.m);
    } else if (name == "mmr") {
      s = ds::mmr(data, q, cfg.mmr_alpha, cfg.m);
    } else if (name == "det") {
      s = ds::det_greedy(data, q, cfg.c, cfg.m);
    } else {
      if (!partitions) ds::throw_invalid("algorithm '" + name + "' needs partitions");
      ds::PartitionLabels labels;
      for (size_t i = 0; i < data.size(); ++i) {
        require(partitions[i], "partition label");
        labels.group_of[data[i].id()] = partitions[i];
      }
      s = name == "autolabel" ? ds::autolabel(data, q, labels, cfg.m)
                              : ds::autolabel_rwd(data, q, labels, cfg.m);
    }
    *out = new dvs_summary{std::move(s)};
  });
}

dvs_status dvs_rank(const dvs_dataset* dataset, const double* qscores,
                    const dvs_control_set* control, double alpha,
                    dvs_summary** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(qscores, "qscores");
    require(control, "control");
    require(out, "out");
    const auto& data = dataset->value;
    const std::span<const double> q(qscores, data.size());
    const auto div = ds::diversity_matrix(data, control->value);
    *out = new dvs_summary{ds::rank_all(ds::ds_scores(data, q, div, alpha))};
  });
}

size_t dvs_summary_size(const dvs_summary* summary) {
  return summary ? summary->value.size() : 0;
}

const char* dvs_summary_id(const dvs_summary* summary, size_t i) {
  if (!summary || i >= summary->value.size()) return nullptr;
  return summary->value.entries[i].id.c_str();
}

const char* dvs_summary_selected_by(const dvs_summary* summary, size_t i) {
  if (!summary || i >= summary->value.size()) return nullptr;
  return summary->value.entries[i].selected_by.c_str();
}

double dvs_summary_score(const dvs_summary* summary, size_t i) {
  if (!summary || i >= summary->value.size()) return 0.0;
  return summary->value.entries[i].score;
}

size_t dvs_summary_round(const dvs_summary* summary, size_t i) {
  if (!summary || i >= summary->value.size()) return 0;
  return summary->value.entries[i].round;
}

size_t dvs_summary_note_count(const dvs_summary* summary) {
  return summary ? summary->value.notes.size() : 0;
}

const char* dvs_summary_note(const dvs_summary* summary, size_t i) {
  if (!summary || i >= summary->value.notes.size()) return nullptr;
  return summary->value.notes[i].c_str();
}

void dvs_summary_free(dvs_summary* summary) { delete summary; }

dvs_status dvs_session_open(const char* config_path, dvs_session** out) {
  return guarded([&] {
    require(config_path, "config_path");
    require(out, "out");
    auto s = std::make_unique<dvs_session>();
    s->config = ds::load_run_config(config_path);
    session_of(s.get());
    *out = s.release();
  });
}

void dvs_session_free(dvs_session* session) { delete session; }

dvs_status dvs_session_set_param(dvs_session* session, const char* name,
                                 double value) {
  return guarded([&] {
    require(session, "session");
    require(name, "name");
    ds::SelectionConfig probe;
    set_field(probe, name, value);
    session->overrides[name] = value;
    session->session.reset();
  });
}

dvs_status dvs_session_summarize(dvs_session* session, const char* algorithm,
                                 char** report_json) {
  return guarded([&] {
    require(report_json, "report_json");
    const auto spec = pick_algorithm(session, algorithm);
    const auto& s = session_of(session);
    check_m(s, spec);
    *report_json = to_c_string(ds::dump_report(ds::run_summarize(s, spec)));
  });
}

dvs_status dvs_session_summary(dvs_session* session, const char* algorithm,
                               dvs_summary** out) {
  return guarded([&] {
    require(out, "out");
    const auto spec = pick_algorithm(session, algorithm);
    const auto& s = session_of(session);
    check_m(s, spec);
    *out = new dvs_summary{s.run(spec)};
  });
}

dvs_status dvs_session_rank(dvs_session* session, char** csv) {
  return guarded([&] {
    require(csv, "csv");
    const auto& s = session_of(session);
    *csv = to_c_string(ds::summary_csv(s.rank(s.config().selection.alpha)));
  });
}

dvs_status dvs_session_evaluate(dvs_session* session, const char* summary_path,
                                char** report_json) {
  return guarded([&] {
    require(summary_path, "summary_path");
    require(report_json, "report_json");
    const auto& s = session_of(session);
    const auto summary = s.load_summary(summary_path);
    *report_json =
        to_c_string(ds::dump_report(ds::run_evaluate(s, summary, "input")));
  });
}

dvs_status dvs_session_compare(dvs_session* session, char** report_json) {
  return guarded([&] {
    require(report_json, "report_json");
    *report_json =
        to_c_string(ds::dump_report(ds::run_compare(session_of(session))));
  });
}

dvs_status dvs_session_sweep(dvs_session* session, const char* parameter,
                             const char* values, char** report_json,
                             char** csv) {
  return guarded([&] {
    require(report_json, "report_json");
    const auto& s = session_of(session);
    ds::SweepConfig sweep = s.config().sweep.value_or(ds::SweepConfig{});
    if (parameter && sweep.parameter != parameter) {
      sweep.parameter = parameter;
      if (!values) sweep.values.clear();
    }
    if (values) sweep.values = ds::parse_values(values);
    if (sweep.parameter.empty()) {
      ds::throw_invalid("no sweep parameter given and none configured");
    }
    if (sweep.values.empty()) {
      ds::throw_invalid("no sweep values given and none configured");
    }
    auto result = ds::run_sweep(s, sweep);
    char* report = to_c_string(ds::dump_report(result.report));
    if (csv) {
      try {
        *csv = to_c_string(result.csv);
      } catch (...) {
        std::free(report);
        throw;
      }
    }
    *report_json = report;
  });
}

dvs_status dvs_session_describe(dvs_session* session, char** text) {
  return guarded([&] {
    require(text, "text");
    *text = to_c_string(ds::describe(session_of(session)));
  });
}

dvs_status dvs_validate_file(const char* kind, const char* path, char** text) {
  return guarded([&] {
    require(kind, "kind");
    require(path, "path");
    require(text, "text");
    const std::string k = kind;
    std::string out;
    if (k == "config") {
      out = ds::describe(ds::Session(ds::load_run_config(path)));
    } else if (k == "embeddings") {
      const auto d = ds::load_embeddings(path);
      out = "embeddings: " + std::to_string(d.size()) + " items, dimension " +
            std::to_string(d.dim()) + "\nok\n";
    } else if (k == "labels") {
      const auto l = ds::load_labels(path);
      out = "labels: " + std::to_string(l.size()) + " labeled ids\nok\n";
    } else if (k == "scores") {
      const auto s = ds::load_external_scores(path);
      out = "scores: " + std::to_string(s.scores.size()) + " ids\nok\n";
    } else if (k == "partitions") {
      const auto p = ds::load_partition_labels(path);
      std::set<std::string> names;
      for (const auto& [id, g] : p.group_of) names.insert(g);
      out = "partitions: " + std::to_string(p.group_of.size()) + " ids in " +
            std::to_string(names.size()) + " partitions\nok\n";
    } else if (k == "query") {
      const auto q = ds::load_query(path);
      out = "query: " + q.name + "\nok\n";
    } else {
      ds::throw_invalid("unknown file kind '" + k + "'");
    }
    *text = to_c_string(out);
  });
}

void dvs_synth_options_default(dvs_synth_options* options) {
  if (!options) return;
  const auto cfg = ds::planted_config();
  options->n = cfg.n;
  options->d = cfg.d;
  options->groups = nullptr;
  options->query_bias = cfg.query_bias;
  options->seed = cfg.seed;
  options->topics = cfg.topics;
  options->group_weight = cfg.group_weight;
  options->query_size = cfg.query_size;
  options->control_per_group = cfg.control_per_group;
  options->balanced_per_group = 2;
  options->binary = 0;
}

dvs_status dvs_synth_write(const dvs_synth_options* options,
                           const char* out_dir, char** manifest) {
  return guarded([&] {
    require(options, "options");
    require(out_dir, "out_dir");
    auto cfg = ds::planted_config(options->seed);
    cfg.n = options->n;
    cfg.d = options->d;
    if (options->groups) cfg.groups = parse_groups(options->groups);
    cfg.query_bias = options->query_bias;
    cfg.topics = options->topics;
    cfg.group_weight = options->group_weight;
    cfg.query_size = options->query_size;
    cfg.control_per_group = options->control_per_group;
    if (options->balanced_per_group == 0 ||
        options->balanced_per_group > cfg.control_per_group) {
      ds::throw_invalid(
          "balanced_per_group must be between 1 and control_per_group");
    }
    const auto files = ds::write_synth_bundle(
        cfg, out_dir,
        options->binary ? ds::EmbeddingFormat::kBinary
                        : ds::EmbeddingFormat::kCsv,
        options->balanced_per_group);
    std::string text;
    for (const auto& f : files) text += f + "\n";
    if (manifest) *manifest = to_c_string(text);
  });
}

dvs_status dvs_replicate(const char* bundle_path, int* data_present,
                         char** report_json, char** message) {
  return guarded([&] {
    require(bundle_path, "bundle_path");
    require(data_present, "data_present");
    const auto result = ds::replicate_tables(bundle_path);
    *data_present = result.data_present ? 1 : 0;
    if (report_json) {
      *report_json = result.data_present
                         ? to_c_string(ds::dump_report(result.report))
                         : nullptr;
    }
    if (message) *message = to_c_string(result.message);
  });
}

}  // extern "C"
