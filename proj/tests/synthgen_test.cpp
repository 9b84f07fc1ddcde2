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


#include "divsum/synthgen.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "divsum/evaluation.hpp"
#include "divsum/experiment.hpp"
#include "divsum/io.hpp"
#include "divsum/scoring.hpp"
#include "divsum/selection.hpp"
#include "test_support.hpp"

namespace divsum {
namespace {

// Reference values computed with an independent Python transcription of the
// generator's splitmix64 counter streams.
TEST(CounterRng, ReferenceStreams) {
  const CounterRng a(0, 0);
  EXPECT_EQ(a.bits(0), 0x568a9b0b1a2c05ecULL);
  EXPECT_EQ(a.bits(1), 0x44e5b8b147ef718bULL);
  EXPECT_DOUBLE_EQ(a.uniform(0), 0.33805245419550545);
  EXPECT_NEAR(a.normal(0), -0.10892259976378564, 1e-15);
  EXPECT_NEAR(a.normal(3), 0.11755908434562126, 1e-15);

  const CounterRng b(42, 7);
  EXPECT_EQ(b.bits(0), 0xdeb745320506897aULL);
  EXPECT_NEAR(b.normal(3), 1.865477355073304, 1e-15);

  const CounterRng c(20240601, (std::uint64_t{3} << 40) | 5);
  EXPECT_EQ(c.bits(1), 0xbf7c4dead66ed930ULL);
  EXPECT_NEAR(c.normal(3), -0.6611086663085571, 1e-15);
}

TEST(Synthgen, DeterministicForFixedSeed) {
  const auto cfg = planted_config();
  const auto x = generate(cfg), y = generate(cfg);
  ASSERT_EQ(x.dataset.size(), y.dataset.size());
  for (std::size_t i = 0; i < x.dataset.size(); ++i) {
    EXPECT_EQ(x.dataset[i].id(), y.dataset[i].id());
    const auto u = x.dataset[i].values(), v = y.dataset[i].values();
    EXPECT_TRUE(std::equal(u.begin(), u.end(), v.begin()));
  }
  auto other = cfg;
  other.seed += 1;
  EXPECT_NE(generate(other).dataset[0].values()[0], x.dataset[0].values()[0]);
}

TEST(Synthgen, BundleBytesAreReproducible) {
  testing::TempDir a, b;
  const auto files = write_synth_bundle(planted_config(), a.path().string(),
                                        EmbeddingFormat::kBinary, 2);
  write_synth_bundle(planted_config(), b.path().string(),
                     EmbeddingFormat::kBinary, 2);
  ASSERT_FALSE(files.empty());
  for (const auto& f : files) {
    EXPECT_EQ(sha256_file(a.file(f)), sha256_file(b.file(f))) << f;
  }
}

TEST(Synthgen, EvenSplitCounts) {
  SynthConfig cfg;
  cfg.n = 100;
  cfg.groups = {{"a", 0.5, 1, 0.1}, {"b", 0.5, 2, 0.1}};
  const auto inst = generate(cfg);
  const Summary all = qs_top(std::vector<double>(100, 0.0), inst.dataset, 100);
  const auto f = group_fractions(all, inst.labels, "gender");
  EXPECT_DOUBLE_EQ(f.at("a"), 0.5);
  EXPECT_DOUBLE_EQ(f.at("b"), 0.5);
}

TEST(Synthgen, CountsFollowProportions) {
  SynthConfig cfg;
  cfg.n = 7;
  cfg.groups = {{"a", 0.5, 1, 0.1}, {"b", 0.25, 2, 0.1}, {"c", 0.25, 3, 0.1}};
  const auto counts = group_counts(cfg);
  EXPECT_EQ(counts[0] + counts[1] + counts[2], 7u);
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_LE(std::abs(double(counts[g]) - 7 * cfg.groups[g].proportion), 1.0);
  }
}

TEST(Synthgen, UnitNormRows) {
  const auto inst = generate(planted_config());
  for (const auto& item : inst.dataset.items()) EXPECT_NEAR(item.norm(), 1.0, 1e-12);
  EXPECT_EQ(inst.majority, "male");
  EXPECT_EQ(inst.query.ground_truth.at("gender"), "male");
}

TEST(Synthgen, RejectsDegenerateConfigs) {
  auto bad_spread = planted_config();
  bad_spread.groups[0].spread = 0.0;
  auto bad_props = planted_config();
  bad_props.groups[1].proportion = 0.5;
  auto no_groups = planted_config();
  no_groups.groups.clear();
  for (const auto& cfg : {bad_spread, bad_props, no_groups}) {
    try {
      generate(cfg);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
    }
  }
}

TEST(Synthgen, QueryTopHalfUnderrepresentsMinority) {
  const auto inst = generate(planted_config());
  const auto a = query_scores(inst.query, inst.dataset);
  const auto half = qs_top(a, inst.dataset, inst.dataset.size() / 2);
  EXPECT_LT(anti_stereotypical_fraction(half, inst.labels, "male"), 0.2);
}

}  // namespace
}  // namespace divsum
