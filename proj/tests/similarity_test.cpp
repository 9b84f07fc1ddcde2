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


#include "divsum/similarity.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "test_support.hpp"

namespace divsum {
namespace {

using testing::random_dataset;

FeatureVector vec(std::vector<double> v, std::string id = "v") {
  return FeatureVector(std::move(id), std::move(v));
}

void expect_invalid(const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected an invalid-input error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput) << e.what();
  }
}

TEST(CosineDistance, HandValues) {
  const auto x = vec({0.3, -1.2, 4.0});
  EXPECT_NEAR(cosine_distance(x, x), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(cosine_distance(vec({1, 0}), vec({0, 1})), 1.0);
  EXPECT_DOUBLE_EQ(cosine_distance(vec({1, 0}), vec({-1, 0})), 2.0);
}

TEST(CosineDistance, RejectsBadInput) {
  expect_invalid([] { cosine_distance(vec({1, 0}), vec({1, 0, 0})); });
  expect_invalid([] { cosine_distance(vec({0, 0}), vec({1, 0})); });
}

TEST(CosineSimilarity, HandValues) {
  const auto x = vec({2, 7});
  EXPECT_DOUBLE_EQ(cosine_similarity(x, x), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(vec({1, 0}), vec({0, 1})), 0.0);
  EXPECT_NEAR(cosine_similarity(vec({3, 4}), vec({4, 3})), 0.96, 1e-15);
  expect_invalid([] { cosine_similarity(vec({1}), vec({1, 2})); });
}

TEST(AvgSim, HandValues) {
  const Dataset one({vec({1, 2}, "i")});
  EXPECT_NEAR(avg_sim(one[0], one), 0.0, 1e-15);
  const Dataset axes({vec({1, 0}, "e0"), vec({0, 1}, "e1")});
  EXPECT_DOUBLE_EQ(avg_sim(vec({1, 0}), axes), 0.5);
  EXPECT_NEAR(avg_sim(vec({1, 1}), axes), 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(ZNormalize, HandValues) {
  const std::vector<double> flat{5, 5, 5};
  for (double v : z_normalize(flat)) EXPECT_EQ(v, 0.0);

  const std::vector<double> three{1, 2, 3};
  const auto z = z_normalize(three);
  EXPECT_NEAR(z[0], -1.2247, 1e-4);
  EXPECT_NEAR(z[1], 0.0, 1e-12);
  EXPECT_NEAR(z[2], 1.2247, 1e-4);

  const std::vector<double> two{0, 2};
  const auto z2 = z_normalize(two);
  EXPECT_DOUBLE_EQ(z2[0], -1.0);
  EXPECT_DOUBLE_EQ(z2[1], 1.0);
}

TEST(DiversityMatrix, Shapes) {
  const Dataset one({vec({1, 2}, "only")});
  const DiversityControlSet ctl({vec({3, 1}, "f")});
  const auto single = diversity_matrix(one, ctl);
  ASSERT_EQ(single.values.rows(), 1u);
  EXPECT_EQ(single.values(0, 0), 0.0);

  const auto ds = random_dataset(5, 4, 1);
  const DiversityControlSet two(random_dataset(2, 4, 2, "f").items());
  const auto dm = diversity_matrix(ds, two);
  EXPECT_EQ(dm.values.rows(), 5u);
  EXPECT_EQ(dm.values.cols(), 2u);
  EXPECT_EQ(dm.control_ids, (std::vector<std::string>{"f000", "f001"}));
}

TEST(DiversityMatrix, TwoPointColumn) {
  // Raw distances 0 and 1 to the control image.
  const Dataset ds({vec({1, 0}, "near"), vec({0, 1}, "far")});
  const DiversityControlSet ctl({vec({1, 0}, "f")});
  const auto dm = diversity_matrix(ds, ctl);
  EXPECT_DOUBLE_EQ(dm.values(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(dm.values(1, 0), 1.0);
}

TEST(DiversityMatrix, RejectsDimensionMismatch) {
  const auto ds = random_dataset(4, 3, 5);
  const DiversityControlSet ctl(random_dataset(1, 2, 6, "f").items());
  expect_invalid([&] { diversity_matrix(ds, ctl); });
}

// --- properties ------------------------------------------------------------

TEST(SimilarityProperty, SymmetryIsExact) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ds = random_dataset(2, 8, seed);
    EXPECT_EQ(cosine_distance(ds[0], ds[1]), cosine_distance(ds[1], ds[0]));
  }
}

TEST(SimilarityProperty, ScaleInvariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ds = random_dataset(2, 8, seed + 100);
    const double c = scale(rng);
    std::vector<double> scaled(ds[0].values().begin(), ds[0].values().end());
    for (double& v : scaled) v *= c;
    EXPECT_NEAR(cosine_distance(vec(scaled), ds[1]),
                cosine_distance(ds[0], ds[1]), 1e-12);
  }
}

TEST(SimilarityProperty, RangeAndReferenceAgreement) {
  const auto ds = random_dataset(30, 6, 11);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      const double d = cosine_distance(ds[i], ds[j]);
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 2.0);
      EXPECT_NEAR(d, testing::ref_distance(ds[i], ds[j]), 1e-12);
    }
  }
}

TEST(SimilarityProperty, ColumnsAreStandardized) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ds = random_dataset(40, 8, seed);
    const DiversityControlSet ctl(random_dataset(3, 8, seed + 500, "f").items());
    const auto dm = diversity_matrix(ds, ctl);
    for (std::size_t c = 0; c < dm.values.cols(); ++c) {
      double mean = 0, sq = 0;
      for (std::size_t r = 0; r < dm.values.rows(); ++r) mean += dm.values(r, c);
      mean /= double(dm.values.rows());
      for (std::size_t r = 0; r < dm.values.rows(); ++r) {
        sq += (dm.values(r, c) - mean) * (dm.values(r, c) - mean);
      }
      EXPECT_NEAR(mean, 0.0, 1e-9);
      EXPECT_NEAR(std::sqrt(sq / double(dm.values.rows())), 1.0, 1e-9);
    }
  }
}

TEST(SimilarityProperty, BitIdenticalAcrossThreadCounts) {
  const auto ds = random_dataset(257, 16, 3);
  const DiversityControlSet ctl(random_dataset(5, 16, 4, "f").items());
  ::setenv("DIVSUM_THREADS", "1", 1);
  const auto serial = diversity_matrix(ds, ctl);
  ::setenv("DIVSUM_THREADS", "4", 1);
  const auto parallel = diversity_matrix(ds, ctl);
  ::unsetenv("DIVSUM_THREADS");
  ASSERT_EQ(serial.values.data().size(), parallel.values.data().size());
  for (std::size_t i = 0; i < serial.values.data().size(); ++i) {
    EXPECT_EQ(serial.values.data()[i], parallel.values.data()[i]);
  }
}

}  // namespace
}  // namespace divsum
