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

// Run configuration, a YAML file:
//
//   embeddings: data/embeddings.csv        # required
//   labels: data/labels.csv                # evaluation only
//   control: data/control.csv              # ids or embeddings
//   control_pool: data/candidates.csv      # resolves control ids; default
//                                          # is the embeddings file
//   partition_labels: data/partitions.csv  # autolabel baselines
//   query: query.yaml                      # or an inline table:
//     name: nurse
//     scorer: reference_set                # or external_scores
//     reference: data/query_refs.csv
//     scores: data/scores.csv
//     normalize_external: false
//     ground_truth: {gender: female}
//     attribute: relevant
//   selection: {m: 50, alpha: 0.5, balanced_alpha: 0.33, beta: 0.33,
//               mmr_alpha: 0.5, c: 3, u: 1.5, l: 1}
//   algorithms: [qs_balanced, {name: qs_balanced, alpha: 0}, qs, det]
//     # In an algorithm entry `alpha` sets that algorithm's own weight:
//     # the DS tradeoff for qs_balanced/dds, the diversity weight for
//     # mmr_balanced, the relevance weight for mmr.
//   seed: 7
//   evaluation: {denominator: summary, gender_attribute: gender,
//                skintone_attribute: skintone}
//   sweep:
//     parameter: alpha                     # control_composition, summary_size
//     algorithm: qs_balanced
//     values: [0, 0.5, 1]                  # or "2:50:1"
//     control_size: 4                      # composition only
//     groups:                              # composition only; values are
//       - {name: female, pool: data/c-f.csv}   # the first group's share
//       - {name: male, pool: data/c-m.csv}
//
// Relative paths resolve against the directory of the file naming them.
// Every problem with the file's contents is a data error.

#ifndef DIVSUM_CONFIG_HPP_
#define DIVSUM_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divsum/evaluation.hpp"
#include "divsum/selection.hpp"
#include "divsum/types.hpp"

namespace divsum {

enum class ScorerKind { kReferenceSet, kExternalScores };

// A path as written in a config file and as resolved against its directory.
// Reports carry the written form so they do not depend on the working
// directory.
struct PathRef {
  std::string written;
  std::string resolved;
  bool empty() const noexcept { return resolved.empty(); }
};

struct QueryConfig {
  std::string name = "query";
  ScorerKind scorer = ScorerKind::kReferenceSet;
  PathRef reference;
  PathRef scores;
  bool normalize_external = false;
  std::map<std::string, std::string> ground_truth;
  std::string attribute;
  PathRef source;  // query file, empty when inline
};

// One configured algorithm run; unset overrides fall back to the run-wide
// selection block.
struct AlgorithmSpec {
  std::string name;
  SelectionConfig params;
  std::string partition = "round_robin";  // dds only
};

struct CompositionGroup {
  std::string name;
  PathRef pool;
};

struct SweepConfig {
  std::string parameter;
  std::string algorithm = "qs_balanced";
  std::vector<double> values;
  std::size_t control_size = 4;
  std::vector<CompositionGroup> groups;
};

struct EvaluationConfig {
  Denominator denominator = Denominator::kSummary;
  std::string gender_attribute = "gender";
  std::string skintone_attribute = "skintone";
};

struct RunConfig {
  std::string path;  // the config file itself
  PathRef embeddings;
  PathRef labels;
  PathRef control;
  PathRef control_pool;
  PathRef partition_labels;
  QueryConfig query;
  SelectionConfig selection;
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t seed = 0;
  EvaluationConfig evaluation;
  std::optional<SweepConfig> sweep;
};

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {
      "autolabel", "autolabel_rwd", "dds", "det",         "ds",
      "mmr",       "mmr_balanced",  "qs",  "qs_balanced"};
  return names;
}

// Lowercases, maps '-' to '_' and folds aliases (qs_top -> qs, ...).
// Throws invalid-input for unknown names.
std::string canonical_algorithm(std::string_view name);

// Range checks shared by the config loader, the CLI and the C API.
void validate_selection(const SelectionConfig& cfg);

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& yaml_text,
                           const std::string& base_dir,
                           const std::string& origin);

QueryConfig load_query_config(const std::string& path);

// Loads the scorer inputs named by `query`.
QuerySpec build_query(const QueryConfig& query);
QuerySpec load_query(const std::string& path);

// "a,b,c" or "start:stop:step" (inclusive of stop when it lands on a step).
std::vector<double> parse_values(std::string_view text);

}  // namespace divsum

#endif  // DIVSUM_CONFIG_HPP_
