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

// Summary selection: control-set balanced selection (round-robin and MMR
// variants), the iterative DDS form of the round-robin, and the comparison
// baselines. None of these functions accepts evaluation labels.
//
// Ties are broken everywhere by the lower query score, then by the
// lexicographically smaller id.

#ifndef DIVSUM_SELECTION_HPP_
#define DIVSUM_SELECTION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "divsum/similarity.hpp"
#include "divsum/types.hpp"

namespace divsum {

struct SelectionConfig {
  std::size_t m = 50;
  double alpha = 0.5;            // DS tradeoff
  double balanced_alpha = 0.33;  // MMR-balanced diversity weight
  double beta = 0.33;            // MMR-balanced redundancy weight
  double mmr_alpha = 0.5;        // relevance weight of the plain MMR baseline
  double c = 3.0;                // DET oversampling factor
  double u = 1.5;                // DDS constants, l < u <= 2l
  double l = 1.0;
};

// Round-robin over control columns; each round every column claims its
// lowest-scoring unclaimed image. A claimed image is invalidated in all
// columns at once. Each round is emitted sorted by the claiming score, and a
// final partial round keeps its lowest-scoring claims.
Summary qs_balanced(const ScoreMatrix& scores, std::size_t m);

// The unbounded round-robin: a ranking of every row whose length-M prefix is
// qs_balanced(scores, M).
Summary rank_all(const ScoreMatrix& scores);

// Top-m rows by query score.
Summary qs_top(std::span<const double> qscores, const Dataset& dataset,
               std::size_t m);

// qs_balanced on the alpha = 1 (diversity-only) matrix.
Summary ds_top(const Dataset& dataset, std::span<const double> qscores,
               const DiversityMatrix& divmatrix, std::size_t m);

// Static assignment of every row to one control column.
struct Partition {
  std::vector<std::size_t> column_of;  // per row
  std::string name;
};

// Column that claims each row in the unbounded round-robin (rank_all).
Partition round_robin_partition(const ScoreMatrix& scores);

// Column of the closest control image by raw cosine distance.
Partition closest_control_partition(const Dataset& dataset,
                                    const DiversityControlSet& control);

struct DdsParams {
  double u = 1.5;
  double l = 1.0;
};

// DDS_R(I) = u / 2^n if I is the lowest-scoring row of U(F) \ R in column F,
// l / 2^n otherwise, where F is the column I belongs to and n = |U(F) ∩ R|.
// `in_r` flags the members of R.
double dds_score(const ScoreMatrix& scores, const Partition& partition,
                 const std::vector<bool>& in_r, std::size_t item,
                 const DdsParams& params);

// Greedy maximization of DDS, one row per step. With the round-robin
// partition this returns the qs_balanced set.
Summary dds_iterative(const ScoreMatrix& scores, std::size_t m,
                      const DdsParams& params, const Partition& partition);
Summary dds_iterative(const ScoreMatrix& scores, std::size_t m,
                      const DdsParams& params = {});

struct MmrBalancedParams {
  double alpha = 0.33;
  double beta = 0.33;
};

// mmod_R(I) = (1 - a - b) A(I) + a min_F d(I, F) - b min_{J in R} d(I, J).
// The empty-R redundancy term is 2, the largest cosine distance, which keeps
// -mmod a diminishing-returns marginal.
double mmod(const Dataset& dataset, std::span<const double> qscores,
            const DiversityControlSet& control, const MmrBalancedParams& params,
            const std::vector<bool>& in_r, std::size_t item);

// Greedy argmin of the MMR-balanced score; the redundancy term is 0 while
// the summary is empty.
Summary mmr_balanced(const Dataset& dataset, std::span<const double> qscores,
                     const DiversityControlSet& control,
                     const MmrBalancedParams& params, std::size_t m);

// Greedy argmin of alpha A(I) - (1 - alpha) min_{J in R} d(I, J).
Summary mmr(const Dataset& dataset, std::span<const double> qscores,
            double alpha, std::size_t m);

// Greedy log-det maximization over the ceil(c * m) most relevant rows.
Summary det_greedy(const Dataset& dataset, std::span<const double> qscores,
                   double c, std::size_t m);

// Group assignments produced by an external classifier. These stand in for
// inferred labels and are distinct from ground-truth evaluation labels.
struct PartitionLabels {
  std::unordered_map<std::string, std::string> group_of;
};

// Half of the summary from each of exactly two partitions, most relevant
// first; the larger half goes to the partition holding the most relevant row.
Summary autolabel(const Dataset& dataset, std::span<const double> qscores,
                  const PartitionLabels& partitions, std::size_t m);

// Greedy maximization of sum u(I) + sum_i sqrt(sum_{R ∩ P_i} u(I)) with
// utility u(I) = max_J A(J) - A(I).
Summary autolabel_rwd(const Dataset& dataset, std::span<const double> qscores,
                      const PartitionLabels& partitions, std::size_t m);

}  // namespace divsum

#endif  // DIVSUM_SELECTION_HPP_
