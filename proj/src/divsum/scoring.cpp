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

#include "divsum/scoring.hpp"

#include <cmath>
#include <string>

#include "divsum/parallel.hpp"

namespace divsum {

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw_invalid(std::string(name) + " must lie in [0, 1], got " +
                  std::to_string(value));
  }
}

std::vector<double> query_scores(const QuerySpec& query,
                                 const Dataset& dataset) {
  if (const auto* ref = std::get_if<ReferenceSet>(&query.scorer)) {
    if (ref->refs.dim() != dataset.dim()) {
      throw_invalid("query reference dimension " +
                    std::to_string(ref->refs.dim()) +
                    " does not match dataset dimension " +
                    std::to_string(dataset.dim()));
    }
    std::vector<double> raw(dataset.size());
    parallel_for(dataset.size(),
                 [&](std::size_t i) { raw[i] = avg_sim(dataset[i], ref->refs); });
    return z_normalize(raw);
  }

  const auto& ext = std::get<ExternalScores>(query.scorer);
  std::vector<double> out;
  out.reserve(dataset.size());
  std::string missing;
  std::size_t missing_count = 0;
  for (const auto& item : dataset.items()) {
    auto it = ext.scores.find(item.id());
    if (it == ext.scores.end()) {
      if (missing_count < 10) {
        if (!missing.empty()) missing += ", ";
        missing += item.id();
      }
      ++missing_count;
      continue;
    }
    out.push_back(-it->second);
  }
  if (missing_count > 0) {
    if (missing_count > 10) {
      missing += ", ... (" + std::to_string(missing_count) + " total)";
    }
    throw_invalid("external scores missing for ids: " + missing);
  }
  if (query.normalize_external) return z_normalize(out);
  return out;
}

ScoreMatrix ds_scores(const Dataset& dataset,
                      std::span<const double> qscores,
                      const DiversityMatrix& divmatrix, double alpha) {
  check_unit_interval(alpha, "alpha");
  const std::size_t rows = dataset.size();
  const std::size_t cols = divmatrix.values.cols();
  if (qscores.size() != rows || divmatrix.values.rows() != rows) {
    throw_invalid("query scores and diversity matrix must cover every row");
  }
  Matrix values(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      values(r, c) = (1.0 - alpha) * qscores[r] + alpha * divmatrix.values(r, c);
    }
  }
  std::vector<std::string> row_ids;
  row_ids.reserve(rows);
  for (const auto& item : dataset.items()) row_ids.push_back(item.id());
  return ScoreMatrix(std::move(row_ids), divmatrix.control_ids,
                     std::vector<double>(qscores.begin(), qscores.end()),
                     std::move(values), alpha);
}

}  // namespace divsum
