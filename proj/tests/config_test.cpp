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

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace divsum {
namespace {

constexpr const char* kMinimal =
    "embeddings: data/e.csv\n"
    "query: {reference: data/q.csv}\n";

RunConfig parse(const std::string& text) {
  return parse_run_config(text, "/base/dir", "run.yaml");
}

void expect_config_error(const std::string& text, const char* fragment) {
  try {
    parse(text);
    ADD_FAILURE() << "accepted:\n" << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kData) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << "'" << fragment << "' not in: " << e.what();
  }
}

TEST(RunConfig, Defaults) {
  const auto cfg = parse(kMinimal);
  EXPECT_EQ(cfg.embeddings.written, "data/e.csv");
  EXPECT_EQ(cfg.embeddings.resolved, "/base/dir/data/e.csv");
  EXPECT_EQ(cfg.query.reference.resolved, "/base/dir/data/q.csv");
  ASSERT_EQ(cfg.algorithms.size(), 1u);
  EXPECT_EQ(cfg.algorithms[0].name, "qs_balanced");
  EXPECT_EQ(cfg.selection.m, 50u);
  EXPECT_DOUBLE_EQ(cfg.selection.alpha, 0.5);
  EXPECT_DOUBLE_EQ(cfg.selection.balanced_alpha, 0.33);
  EXPECT_DOUBLE_EQ(cfg.selection.beta, 0.33);
  EXPECT_DOUBLE_EQ(cfg.selection.c, 3.0);
  EXPECT_FALSE(cfg.sweep.has_value());
}

TEST(RunConfig, AbsolutePathsStay) {
  const auto cfg = parse("embeddings: /abs/e.csv\nquery: {reference: q.csv}\n");
  EXPECT_EQ(cfg.embeddings.resolved, "/abs/e.csv");
}

TEST(RunConfig, AlgorithmEntries) {
  const auto cfg = parse(std::string(kMinimal) +
                         "selection: {m: 10, alpha: 0.4}\n"
                         "algorithms: [QS-Top, {name: qs_balanced, alpha: 0},\n"
                         "  {name: mmr_balanced, alpha: 0.2, beta: 0.5},\n"
                         "  {name: mmr, alpha: 0.9}, {name: dds, partition: closest_control},\n"
                         "  det_greedy, dds_iterative, ds_top]\n");
  ASSERT_EQ(cfg.algorithms.size(), 8u);
  EXPECT_EQ(cfg.algorithms[0].name, "qs");
  EXPECT_DOUBLE_EQ(cfg.algorithms[0].params.alpha, 0.4);
  EXPECT_EQ(cfg.algorithms[0].params.m, 10u);
  EXPECT_DOUBLE_EQ(cfg.algorithms[1].params.alpha, 0.0);
  EXPECT_DOUBLE_EQ(cfg.algorithms[2].params.balanced_alpha, 0.2);
  EXPECT_DOUBLE_EQ(cfg.algorithms[2].params.beta, 0.5);
  EXPECT_DOUBLE_EQ(cfg.algorithms[2].params.alpha, 0.4);
  EXPECT_DOUBLE_EQ(cfg.algorithms[3].params.mmr_alpha, 0.9);
  EXPECT_EQ(cfg.algorithms[4].partition, "closest_control");
  EXPECT_EQ(cfg.algorithms[5].name, "det");
  EXPECT_EQ(cfg.algorithms[6].name, "dds");
  EXPECT_EQ(cfg.algorithms[7].name, "ds");
}

TEST(RunConfig, ExternalScoresQuery) {
  const auto cfg = parse(
      "embeddings: e.csv\n"
      "query:\n"
      "  name: nurse\n"
      "  scorer: external_scores\n"
      "  scores: s.csv\n"
      "  normalize_external: true\n"
      "  ground_truth: {gender: female}\n"
      "  attribute: relevant\n");
  EXPECT_EQ(cfg.query.scorer, ScorerKind::kExternalScores);
  EXPECT_EQ(cfg.query.name, "nurse");
  EXPECT_TRUE(cfg.query.normalize_external);
  EXPECT_EQ(cfg.query.ground_truth.at("gender"), "female");
}

TEST(RunConfig, SweepBlock) {
  const auto cfg = parse(std::string(kMinimal) +
                         "sweep: {parameter: summary_size, values: '2:50:1'}\n");
  ASSERT_TRUE(cfg.sweep.has_value());
  EXPECT_EQ(cfg.sweep->values.size(), 49u);
  EXPECT_EQ(cfg.sweep->algorithm, "qs_balanced");
}

TEST(RunConfig, Errors) {
  expect_config_error("query: {reference: q.csv}\n", "embeddings");
  expect_config_error("embeddings: e.csv\n", "query");
  expect_config_error(std::string(kMinimal) + "colour: blue\n", "run.yaml:3: unknown key 'colour'");
  expect_config_error(std::string(kMinimal) + "selection: {alpha: 1.5}\n", "alpha");
  expect_config_error(std::string(kMinimal) + "selection: {balanced_alpha: 0.7, beta: 0.5}\n",
                      "balanced_alpha + beta");
  expect_config_error(std::string(kMinimal) + "selection: {u: 3, l: 1}\n", "0 < l < u <= 2l");
  expect_config_error(std::string(kMinimal) + "selection: {c: 0.5}\n", "c must be");
  expect_config_error(std::string(kMinimal) + "selection: {m: 0}\n", "m must be");
  expect_config_error(std::string(kMinimal) + "selection: {m: abc}\n", "wrong type");
  expect_config_error(std::string(kMinimal) + "algorithms: [quicksort]\n",
                      "run.yaml:3: unknown algorithm 'quicksort'");
  expect_config_error(std::string(kMinimal) + "algorithms: []\n", "non-empty");
  expect_config_error(std::string(kMinimal) + "algorithms: [{name: dds, partition: nearest}]\n",
                      "partition must be");
  expect_config_error("embeddings: e.csv\nquery: {scorer: external_scores}\n", "scores");
  expect_config_error("embeddings: [unclosed\n", "run.yaml:");
  expect_config_error("- just\n- a list\n", "YAML table");
  expect_config_error(std::string(kMinimal) + "sweep: {parameter: colour}\n", "parameter");
}

TEST(CanonicalAlgorithm, NamesAndAliases) {
  EXPECT_EQ(canonical_algorithm("QS_TOP"), "qs");
  EXPECT_EQ(canonical_algorithm("autolabel-rwd"), "autolabel_rwd");
  for (const auto& name : algorithm_names()) EXPECT_EQ(canonical_algorithm(name), name);
  EXPECT_THROW(canonical_algorithm("mmr2"), Error);
}

TEST(ParseValues, ListsAndRanges) {
  EXPECT_EQ(parse_values("0,0.5,1"), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(parse_values("0:1:0.25"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
  EXPECT_EQ(parse_values("2:50:1").size(), 49u);
  for (const char* bad : {"", "a,b", "1:0:1", "0:1:0", "0:1"}) {
    try {
      parse_values(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidInput) << bad;
    }
  }
}

TEST(ValidateSelection, AcceptsDefaults) {
  EXPECT_NO_THROW(validate_selection(SelectionConfig{}));
}

}  // namespace
}  // namespace divsum
