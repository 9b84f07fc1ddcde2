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

#include "divsum/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <set>

#include "divsum/io.hpp"
#include "divsum/scoring.hpp"

namespace divsum {
namespace {

namespace fs = std::filesystem;

// Carries the origin (file name) for error messages.
class Reader {
 public:
  Reader(std::string origin, std::string base_dir)
      : origin_(std::move(origin)), base_(std::move(base_dir)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    std::string where = origin_;
    const auto mark = node.Mark();
    if (mark.line >= 0) where += ":" + std::to_string(mark.line + 1);
    throw_data(where + ": " + what);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw_data(origin_ + ": " + what);
  }

  void expect_map(const YAML::Node& node, const std::string& key) const {
    if (!node.IsMap()) fail(node, "'" + key + "' must be a table");
  }

  void only_keys(const YAML::Node& node, const std::string& where,
                 std::initializer_list<const char*> keys) const {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (std::none_of(keys.begin(), keys.end(),
                       [&](const char* k) { return key == k; })) {
        fail(kv.first, "unknown key '" + key + "' in " + where);
      }
    }
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, "'" + key + "' must be a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, "'" + key + "' has the wrong type");
    }
  }

  double number(const YAML::Node& node, const std::string& key) const {
    const double v = scalar<double>(node, key);
    if (!std::isfinite(v)) fail(node, "'" + key + "' must be finite");
    return v;
  }

  std::size_t count(const YAML::Node& node, const std::string& key) const {
    const auto v = scalar<long long>(node, key);
    if (v < 0) fail(node, "'" + key + "' must not be negative");
    return static_cast<std::size_t>(v);
  }

  PathRef path(const YAML::Node& node, const std::string& key) const {
    auto text = scalar<std::string>(node, key);
    if (text.empty()) fail(node, "'" + key + "' must not be empty");
    fs::path p(text);
    if (p.is_relative()) p = fs::path(base_) / p;
    return {text, p.lexically_normal().string()};
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::string base_;
};

std::string dir_of(const std::string& path) {
  auto parent = fs::path(path).parent_path();
  return parent.empty() ? std::string(".") : parent.string();
}

YAML::Node parse_yaml(const std::string& text, const std::string& origin) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw_data(origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

QueryConfig read_query(const Reader& r, const YAML::Node& node) {
  r.expect_map(node, "query");
  r.only_keys(node, "query",
              {"name", "scorer", "reference", "scores", "normalize_external",
               "ground_truth", "attribute"});
  QueryConfig q;
  if (node["name"]) q.name = r.scalar<std::string>(node["name"], "name");
  if (node["scorer"]) {
    const auto s = r.scalar<std::string>(node["scorer"], "scorer");
    if (s == "reference_set") {
      q.scorer = ScorerKind::kReferenceSet;
    } else if (s == "external_scores") {
      q.scorer = ScorerKind::kExternalScores;
    } else {
      r.fail(node["scorer"],
             "scorer must be 'reference_set' or 'external_scores'");
    }
  } else if (node["scores"] && !node["reference"]) {
    q.scorer = ScorerKind::kExternalScores;
  }
  if (node["reference"]) q.reference = r.path(node["reference"], "reference");
  if (node["scores"]) q.scores = r.path(node["scores"], "scores");
  if (q.scorer == ScorerKind::kReferenceSet && q.reference.empty()) {
    r.fail(node, "query needs 'reference' for the reference_set scorer");
  }
  if (q.scorer == ScorerKind::kExternalScores && q.scores.empty()) {
    r.fail(node, "query needs 'scores' for the external_scores scorer");
  }
  if (node["normalize_external"]) {
    q.normalize_external =
        r.scalar<bool>(node["normalize_external"], "normalize_external");
  }
  if (const auto gt = node["ground_truth"]) {
    r.expect_map(gt, "ground_truth");
    for (const auto& kv : gt) {
      q.ground_truth[kv.first.as<std::string>()] =
          r.scalar<std::string>(kv.second, kv.first.as<std::string>());
    }
  }
  if (node["attribute"]) {
    q.attribute = r.scalar<std::string>(node["attribute"], "attribute");
  }
  return q;
}

void read_selection_key(const Reader& r, const YAML::Node& value,
                        const std::string& key, SelectionConfig& cfg) {
  if (key == "m") {
    cfg.m = r.count(value, key);
  } else if (key == "alpha") {
    cfg.alpha = r.number(value, key);
  } else if (key == "balanced_alpha") {
    cfg.balanced_alpha = r.number(value, key);
  } else if (key == "beta") {
    cfg.beta = r.number(value, key);
  } else if (key == "mmr_alpha") {
    cfg.mmr_alpha = r.number(value, key);
  } else if (key == "c") {
    cfg.c = r.number(value, key);
  } else if (key == "u") {
    cfg.u = r.number(value, key);
  } else if (key == "l") {
    cfg.l = r.number(value, key);
  } else {
    r.fail(value, "unknown selection key '" + key + "'");
  }
}

AlgorithmSpec read_algorithm(const Reader& r, const YAML::Node& node,
                             const SelectionConfig& defaults) {
  AlgorithmSpec spec;
  spec.params = defaults;
  if (node.IsScalar()) {
    try {
      spec.name = canonical_algorithm(node.as<std::string>());
    } catch (const Error& e) {
      r.fail(node, e.what());
    }
    return spec;
  }
  r.expect_map(node, "algorithms entry");
  if (!node["name"]) r.fail(node, "algorithm entry needs a 'name'");
  try {
    spec.name = canonical_algorithm(r.scalar<std::string>(node["name"], "name"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kData) throw;
    r.fail(node["name"], e.what());
  }
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (key == "name") continue;
    if (key == "partition") {
      spec.partition = r.scalar<std::string>(kv.second, key);
      if (spec.partition != "round_robin" &&
          spec.partition != "closest_control") {
        r.fail(kv.second,
               "partition must be 'round_robin' or 'closest_control'");
      }
    } else if (key == "alpha" && spec.name == "mmr_balanced") {
      spec.params.balanced_alpha = r.number(kv.second, key);
    } else if (key == "alpha" && spec.name == "mmr") {
      spec.params.mmr_alpha = r.number(kv.second, key);
    } else {
      read_selection_key(r, kv.second, key, spec.params);
    }
  }
  return spec;
}

SweepConfig read_sweep(const Reader& r, const YAML::Node& node) {
  r.expect_map(node, "sweep");
  r.only_keys(node, "sweep",
              {"parameter", "algorithm", "values", "control_size", "groups"});
  SweepConfig s;
  if (node["parameter"]) {
    s.parameter = r.scalar<std::string>(node["parameter"], "parameter");
    if (s.parameter != "alpha" && s.parameter != "control_composition" &&
        s.parameter != "summary_size") {
      r.fail(node["parameter"],
             "sweep parameter must be alpha, control_composition or "
             "summary_size");
    }
  }
  if (node["algorithm"]) {
    try {
      s.algorithm = canonical_algorithm(
          r.scalar<std::string>(node["algorithm"], "algorithm"));
    } catch (const Error& e) {
      r.fail(node["algorithm"], e.what());
    }
  }
  if (const auto v = node["values"]) {
    try {
      if (v.IsScalar()) {
        s.values = parse_values(v.as<std::string>());
      } else if (v.IsSequence()) {
        for (const auto& x : v) s.values.push_back(r.number(x, "values"));
      } else {
        r.fail(v, "'values' must be a list or a range string");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kData) throw;
      r.fail(v, e.what());
    }
  }
  if (node["control_size"]) {
    s.control_size = r.count(node["control_size"], "control_size");
  }
  if (const auto groups = node["groups"]) {
    if (!groups.IsSequence()) r.fail(groups, "'groups' must be a list");
    for (const auto& g : groups) {
      r.expect_map(g, "groups entry");
      r.only_keys(g, "groups entry", {"name", "pool"});
      if (!g["name"] || !g["pool"]) {
        r.fail(g, "each group needs 'name' and 'pool'");
      }
      s.groups.push_back({r.scalar<std::string>(g["name"], "name"),
                          r.path(g["pool"], "pool")});
    }
  }
  return s;
}

}  // namespace

std::string canonical_algorithm(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) {
    return ch == '-' ? '_' : static_cast<char>(std::tolower(ch));
  });
  if (s == "qs_top") s = "qs";
  if (s == "ds_top") s = "ds";
  if (s == "dds_iterative") s = "dds";
  if (s == "det_greedy") s = "det";
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), s) == names.end()) {
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    throw_invalid("unknown algorithm '" + std::string(name) +
                  "' (expected one of " + all + ")");
  }
  return s;
}

void validate_selection(const SelectionConfig& cfg) {
  if (cfg.m == 0) throw_invalid("m must be positive");
  check_unit_interval(cfg.alpha, "alpha");
  check_unit_interval(cfg.balanced_alpha, "balanced_alpha");
  check_unit_interval(cfg.beta, "beta");
  check_unit_interval(cfg.mmr_alpha, "mmr_alpha");
  if (cfg.balanced_alpha + cfg.beta > 1.0) {
    throw_invalid("balanced_alpha + beta must not exceed 1");
  }
  if (!(cfg.c >= 1.0) || !std::isfinite(cfg.c)) {
    throw_invalid("c must be at least 1");
  }
  if (!(cfg.l > 0.0) || !(cfg.l < cfg.u) || !(cfg.u <= 2.0 * cfg.l)) {
    throw_invalid("DDS constants need 0 < l < u <= 2l");
  }
}

RunConfig parse_run_config(const std::string& yaml_text,
                           const std::string& base_dir,
                           const std::string& origin) {
  const Reader r(origin, base_dir);
  const auto root = parse_yaml(yaml_text, origin);
  if (!root.IsMap()) r.fail("config must be a YAML table");
  r.only_keys(root, "config",
              {"embeddings", "labels", "control", "control_pool",
               "partition_labels", "query", "selection", "algorithms", "seed",
               "evaluation", "sweep"});

  RunConfig cfg;
  cfg.path = origin;
  if (!root["embeddings"]) r.fail("missing required key 'embeddings'");
  cfg.embeddings = r.path(root["embeddings"], "embeddings");
  if (root["labels"]) cfg.labels = r.path(root["labels"], "labels");
  if (root["control"]) cfg.control = r.path(root["control"], "control");
  if (root["control_pool"]) {
    cfg.control_pool = r.path(root["control_pool"], "control_pool");
  }
  if (root["partition_labels"]) {
    cfg.partition_labels = r.path(root["partition_labels"], "partition_labels");
  }

  if (!root["query"]) r.fail("missing required key 'query'");
  if (root["query"].IsScalar()) {
    const auto ref = r.path(root["query"], "query");
    cfg.query = load_query_config(ref.resolved);
    cfg.query.source = ref;
  } else {
    cfg.query = read_query(r, root["query"]);
  }

  if (const auto sel = root["selection"]) {
    r.expect_map(sel, "selection");
    for (const auto& kv : sel) {
      read_selection_key(r, kv.second, kv.first.as<std::string>(),
                         cfg.selection);
    }
  }
  try {
    validate_selection(cfg.selection);
  } catch (const Error& e) {
    r.fail(root["selection"] ? root["selection"] : root, e.what());
  }

  if (const auto algs = root["algorithms"]) {
    if (!algs.IsSequence() || algs.size() == 0) {
      r.fail(algs, "'algorithms' must be a non-empty list");
    }
    for (const auto& a : algs) {
      cfg.algorithms.push_back(read_algorithm(r, a, cfg.selection));
      try {
        validate_selection(cfg.algorithms.back().params);
      } catch (const Error& e) {
        r.fail(a, e.what());
      }
    }
  } else {
    cfg.algorithms.push_back({"qs_balanced", cfg.selection, "round_robin"});
  }

  if (root["seed"]) {
    cfg.seed = r.scalar<std::uint64_t>(root["seed"], "seed");
  }

  if (const auto ev = root["evaluation"]) {
    r.expect_map(ev, "evaluation");
    r.only_keys(ev, "evaluation",
                {"denominator", "gender_attribute", "skintone_attribute"});
    if (ev["denominator"]) {
      const auto d = r.scalar<std::string>(ev["denominator"], "denominator");
      if (d == "summary") {
        cfg.evaluation.denominator = Denominator::kSummary;
      } else if (d == "labeled") {
        cfg.evaluation.denominator = Denominator::kLabeled;
      } else {
        r.fail(ev["denominator"], "denominator must be 'summary' or 'labeled'");
      }
    }
    if (ev["gender_attribute"]) {
      cfg.evaluation.gender_attribute =
          r.scalar<std::string>(ev["gender_attribute"], "gender_attribute");
    }
    if (ev["skintone_attribute"]) {
      cfg.evaluation.skintone_attribute =
          r.scalar<std::string>(ev["skintone_attribute"], "skintone_attribute");
    }
  }

  if (root["sweep"]) cfg.sweep = read_sweep(r, root["sweep"]);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_file(path), dir_of(path), path);
}

QueryConfig load_query_config(const std::string& path) {
  const Reader r(path, dir_of(path));
  const auto root = parse_yaml(read_file(path), path);
  if (!root.IsMap()) r.fail("query file must be a YAML table");
  auto q = read_query(r, root);
  q.source = {path, path};
  return q;
}

QuerySpec build_query(const QueryConfig& query) {
  auto spec = [&](std::variant<ReferenceSet, ExternalScores> scorer) {
    return QuerySpec{query.name, std::move(scorer), query.ground_truth,
                     query.attribute, query.normalize_external};
  };
  if (query.scorer == ScorerKind::kReferenceSet) {
    return spec(ReferenceSet{load_embeddings(query.reference.resolved)});
  }
  return spec(load_external_scores(query.scores.resolved));
}

QuerySpec load_query(const std::string& path) {
  return build_query(load_query_config(path));
}

std::vector<double> parse_values(std::string_view text) {
  auto number = [&](std::string_view t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) {
      t.remove_prefix(1);
    }
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) {
      t.remove_suffix(1);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
        !std::isfinite(v)) {
      throw_invalid("not a number: '" + std::string(t) + "'");
    }
    return v;
  };
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(number(text.substr(start, colon - start)));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) throw_invalid("range must be start:stop:step");
    const double first = parts[0], last = parts[1], step = parts[2];
    if (!(step > 0.0) || last < first) {
      throw_invalid("range needs a positive step and start <= stop");
    }
    const auto n = static_cast<std::size_t>(
        std::floor((last - first) / step + 1e-9)) + 1;
    if (n > 1000000) throw_invalid("range has too many values");
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(first + static_cast<double>(i) * step);
    }
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(number(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace divsum
