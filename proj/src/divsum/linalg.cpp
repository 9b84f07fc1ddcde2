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

#include "divsum/linalg.hpp"

#include <cmath>
#include <limits>

namespace divsum {

double dot(const FeatureVector& a, const FeatureVector& b) {
  if (a.dim() != b.dim()) throw_invalid("dimension mismatch in dot product");
  double s = 0.0;
  const auto x = a.values();
  const auto y = b.values();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double gram_ridge(std::span<const FeatureVector* const> rows) {
  if (rows.empty()) return 0.0;
  double total = 0.0;
  for (const auto* r : rows) total += r->norm() * r->norm();
  return kRidgeScale * total / static_cast<double>(rows.size());
}

double gram_logdet(std::span<const FeatureVector* const> rows, double ridge) {
  const std::size_t k = rows.size();
  // Plain Cholesky on the k x k Gram matrix.
  std::vector<double> l(k * k, 0.0);
  double logdet = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = dot(*rows[i], *rows[j]);
      if (i == j) s += ridge;
      for (std::size_t p = 0; p < j; ++p) s -= l[i * k + p] * l[j * k + p];
      if (i == j) {
        if (!(s > 0.0)) return -std::numeric_limits<double>::infinity();
        l[i * k + i] = std::sqrt(s);
        logdet += std::log(s);
      } else {
        l[i * k + j] = s / l[j * k + j];
      }
    }
  }
  return logdet;
}

IncrementalLogDet::IncrementalLogDet(
    std::span<const FeatureVector* const> pool, double ridge)
    : pool_(pool.begin(), pool.end()),
      coeffs_(pool.size()),
      residual_(pool.size()),
      selected_(pool.size(), false) {
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    residual_[i] = dot(*pool_[i], *pool_[i]) + ridge;
  }
}

double IncrementalLogDet::gain(std::size_t i) const {
  if (!(residual_[i] > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(residual_[i]);
}

void IncrementalLogDet::select(std::size_t j) {
  selected_[j] = true;
  const double pivot = residual_[j];
  if (!(pivot > 0.0)) {
    // Numerically dependent pick: it spans nothing new.
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (!selected_[i]) coeffs_[i].push_back(0.0);
    }
    return;
  }
  const double root = std::sqrt(pivot);
  const auto& cj = coeffs_[j];
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if (selected_[i]) continue;
    double e = dot(*pool_[j], *pool_[i]);
    const auto& ci = coeffs_[i];
    for (std::size_t p = 0; p < cj.size(); ++p) e -= cj[p] * ci[p];
    e /= root;
    coeffs_[i].push_back(e);
    residual_[i] -= e * e;
  }
}

}  // namespace divsum
