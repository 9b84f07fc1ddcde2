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

#ifndef DIVSUM_TIEBREAK_HPP_
#define DIVSUM_TIEBREAK_HPP_

#include <span>
#include <string>

#include "divsum/types.hpp"

namespace divsum::detail {

// Strict "a ranks before b" when minimizing `value`: lower value, then
// lower query score, then smaller id.
inline bool ranks_before(double value_a, double query_a, const std::string& id_a,
                         double value_b, double query_b,
                         const std::string& id_b) {
  if (value_a != value_b) return value_a < value_b;
  if (query_a != query_b) return query_a < query_b;
  return id_a < id_b;
}

// Same ordering when maximizing `value`.
inline bool ranks_before_max(double value_a, double query_a,
                             const std::string& id_a, double value_b,
                             double query_b, const std::string& id_b) {
  if (value_a != value_b) return value_a > value_b;
  if (query_a != query_b) return query_a < query_b;
  return id_a < id_b;
}

inline void check_summary_size(std::size_t m, std::size_t available) {
  if (m == 0) throw_invalid("summary size must be positive");
  if (m > available) {
    throw_invalid("summary size " + std::to_string(m) +
                  " exceeds the number of candidates " +
                  std::to_string(available));
  }
}

inline void check_qscores(std::span<const double> qscores,
                          const Dataset& dataset) {
  if (qscores.size() != dataset.size()) {
    throw_invalid("query scores must cover every dataset row");
  }
}

}  // namespace divsum::detail

#endif  // DIVSUM_TIEBREAK_HPP_
