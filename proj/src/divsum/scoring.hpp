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

#ifndef DIVSUM_SCORING_HPP_
#define DIVSUM_SCORING_HPP_

#include <span>
#include <vector>

#include "divsum/similarity.hpp"
#include "divsum/types.hpp"

namespace divsum {

inline constexpr double kDefaultAlpha = 0.5;

// Query relevance A(q, I) for every dataset row, in dataset order. Lower is
// more relevant.
//   ReferenceSet:   z-normalized mean cosine distance to the reference set.
//   ExternalScores: -f(I), optionally z-normalized (QuerySpec flag).
std::vector<double> query_scores(const QuerySpec& query,
                                 const Dataset& dataset);

// (1 - alpha) * A(q, I) + alpha * div(I, I_F) for every row and control
// column.
ScoreMatrix ds_scores(const Dataset& dataset,
                      std::span<const double> qscores,
                      const DiversityMatrix& divmatrix, double alpha);

void check_unit_interval(double value, const char* name);

}  // namespace divsum

#endif  // DIVSUM_SCORING_HPP_
