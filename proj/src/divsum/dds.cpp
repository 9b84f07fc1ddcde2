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

// Iterative form of the round-robin selection. Each row belongs to one
// control column F (a static partition U). A row scores u / 2^n when it is
// the best remaining row of its own column and l / 2^n otherwise, with n the
// number of rows of U(F) already selected. Since l < u <= 2l, the greedy
// always serves the most lagging column next, which reproduces the
// round-robin.

#include <cmath>

#include "divsum/selection.hpp"
#include "divsum/tiebreak.hpp"

namespace divsum {
namespace {

using detail::ranks_before;

void check_params(const DdsParams& p) {
  if (!(p.l > 0.0 && p.l < p.u && p.u <= 2.0 * p.l)) {
    throw_invalid("DDS constants must satisfy 0 < l < u <= 2l");
  }
}

void check_partition(const ScoreMatrix& s, const Partition& p) {
  if (p.column_of.size() != s.rows()) {
    throw_invalid("partition must assign every row");
  }
  for (std::size_t c : p.column_of) {
    if (c >= s.cols()) throw_invalid("partition refers to a missing column");
  }
}

bool before_in_column(const ScoreMatrix& s, std::size_t c, std::size_t a,
                      std::size_t b) {
  return ranks_before(s.at(a, c), s.query_score(a), s.row_id(a), s.at(b, c),
                      s.query_score(b), s.row_id(b));
}

// Best unselected row of every column, or rows() when the column is empty.
std::vector<std::size_t> column_leaders(const ScoreMatrix& s,
                                        const Partition& p,
                                        const std::vector<bool>& in_r) {
  std::vector<std::size_t> lead(s.cols(), s.rows());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    if (in_r[r]) continue;
    const std::size_t c = p.column_of[r];
    if (lead[c] == s.rows() || before_in_column(s, c, r, lead[c])) lead[c] = r;
  }
  return lead;
}

std::vector<int> column_counts(const ScoreMatrix& s, const Partition& p,
                               const std::vector<bool>& in_r) {
  std::vector<int> count(s.cols(), 0);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    if (in_r[r]) ++count[p.column_of[r]];
  }
  return count;
}

}  // namespace

double dds_score(const ScoreMatrix& scores, const Partition& partition,
                 const std::vector<bool>& in_r, std::size_t item,
                 const DdsParams& params) {
  check_params(params);
  check_partition(scores, partition);
  if (in_r.size() != scores.rows()) throw_invalid("subset mask has wrong size");
  const std::size_t c = partition.column_of[item];
  const int n = column_counts(scores, partition, in_r)[c];
  const auto lead = column_leaders(scores, partition, in_r);
  const double base = lead[c] == item ? params.u : params.l;
  return std::ldexp(base, -n);
}

Summary dds_iterative(const ScoreMatrix& scores, std::size_t m,
                      const DdsParams& params, const Partition& partition) {
  check_params(params);
  check_partition(scores, partition);
  detail::check_summary_size(m, scores.rows());
  const std::size_t rows = scores.rows();
  std::vector<bool> in_r(rows, false);
  std::vector<int> count(scores.cols(), 0);

  Summary out;
  out.entries.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    const auto lead = column_leaders(scores, partition, in_r);
    std::size_t best = rows;
    double best_value = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (in_r[r]) continue;
      const std::size_t c = partition.column_of[r];
      const double value =
          std::ldexp(lead[c] == r ? params.u : params.l, -count[c]);
      if (best == rows || value > best_value) {
        best = r;
        best_value = value;
        continue;
      }
      if (value < best_value) continue;
      // Equal DDS: lower own-column score, then query score, then id.
      const std::size_t bc = partition.column_of[best];
      if (ranks_before(scores.at(r, c), scores.query_score(r), scores.row_id(r),
                       scores.at(best, bc), scores.query_score(best),
                       scores.row_id(best))) {
        best = r;
      }
    }
    const std::size_t c = partition.column_of[best];
    out.entries.push_back({scores.row_id(best), scores.col_id(c),
                           scores.at(best, c),
                           static_cast<std::size_t>(count[c])});
    in_r[best] = true;
    ++count[c];
  }
  if (m % scores.cols() != 0) {
    out.notes.push_back(
        "outside theorem scope: summary size is not a multiple of the "
        "control-set size");
  }
  if (partition.name != "round-robin") {
    out.notes.push_back("partition: " + partition.name);
  }
  return out;
}

Summary dds_iterative(const ScoreMatrix& scores, std::size_t m,
                      const DdsParams& params) {
  return dds_iterative(scores, m, params, round_robin_partition(scores));
}

}  // namespace divsum
