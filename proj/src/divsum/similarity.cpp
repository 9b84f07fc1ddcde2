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

#include <algorithm>
#include <cmath>

#include "divsum/parallel.hpp"

namespace divsum {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_dims(const FeatureVector& u, const FeatureVector& v) {
  if (u.dim() != v.dim()) {
    throw_invalid("dimension mismatch between '" + u.id() + "' (" +
                  std::to_string(u.dim()) + ") and '" + v.id() + "' (" +
                  std::to_string(v.dim()) + ")");
  }
}

}  // namespace

double cosine_similarity(const FeatureVector& u, const FeatureVector& v) {
  check_dims(u, v);
  // Multiplying the norms first keeps the expression symmetric in u and v.
  // Clamped so rounding cannot push distances outside [0, 2].
  return std::clamp(dot(u.values(), v.values()) / (u.norm() * v.norm()), -1.0,
                    1.0);
}

double cosine_distance(const FeatureVector& u, const FeatureVector& v) {
  return 1.0 - cosine_similarity(u, v);
}

double avg_sim(const FeatureVector& item, const Dataset& refs) {
  double total = 0.0;
  for (const auto& r : refs.items()) total += cosine_distance(item, r);
  return total / static_cast<double>(refs.size());
}

std::vector<double> z_normalize(std::span<const double> scores) {
  if (scores.empty()) throw_invalid("z_normalize needs at least one score");
  const double n = static_cast<double>(scores.size());
  double mean = 0.0;
  for (double s : scores) {
    if (!std::isfinite(s)) throw_invalid("z_normalize input is not finite");
    mean += s;
  }
  mean /= n;
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= n;
  const double sd = std::sqrt(var);
  std::vector<double> out(scores.size(), 0.0);
  if (!(sd > 0.0)) return out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = (scores[i] - mean) / sd;
  }
  return out;
}

DiversityMatrix diversity_matrix(const Dataset& dataset,
                                 const DiversityControlSet& control) {
  if (dataset.dim() != control.dim()) {
    throw_invalid("control set dimension " + std::to_string(control.dim()) +
                  " does not match dataset dimension " +
                  std::to_string(dataset.dim()));
  }
  const std::size_t rows = dataset.size();
  const std::size_t cols = control.size();
  Matrix raw(rows, cols);
  // Every row is computed independently, so the result does not depend on
  // how rows are split across threads.
  parallel_for(rows, [&](std::size_t r) {
    for (std::size_t c = 0; c < cols; ++c) {
      raw(r, c) = cosine_distance(dataset[r], control[c]);
    }
  });

  DiversityMatrix out{{}, Matrix(rows, cols)};
  out.control_ids.reserve(cols);
  std::vector<double> column(rows);
  for (std::size_t c = 0; c < cols; ++c) {
    out.control_ids.push_back(control[c].id());
    for (std::size_t r = 0; r < rows; ++r) column[r] = raw(r, c);
    const auto z = z_normalize(column);
    for (std::size_t r = 0; r < rows; ++r) out.values(r, c) = z[r];
  }
  return out;
}

}  // namespace divsum
