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

// Pairwise similarity and normalization. Distances follow the
// "lower is more similar" convention; cosine_similarity is the
// higher-is-better variant used only for accuracy reporting.

#ifndef DIVSUM_SIMILARITY_HPP_
#define DIVSUM_SIMILARITY_HPP_

#include <span>
#include <string>
#include <vector>

#include "divsum/types.hpp"

namespace divsum {

// 1 - cos(u, v), in [0, 2].
double cosine_distance(const FeatureVector& u, const FeatureVector& v);
double cosine_similarity(const FeatureVector& u, const FeatureVector& v);

// Mean cosine distance from `item` to every member of `refs`.
double avg_sim(const FeatureVector& item, const Dataset& refs);

// Subtract the mean and divide by the population standard deviation.
// A zero-variance input maps to all zeros.
std::vector<double> z_normalize(std::span<const double> scores);

// Column-normalized cosine distances between dataset rows and control
// columns.
struct DiversityMatrix {
  std::vector<std::string> control_ids;
  Matrix values;
};

DiversityMatrix diversity_matrix(const Dataset& dataset,
                                 const DiversityControlSet& control);

}  // namespace divsum

#endif  // DIVSUM_SIMILARITY_HPP_
