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

// Gram-matrix log-determinants with a relative ridge, shared by the DET
// baseline and the non-redundancy metric.

#ifndef DIVSUM_LINALG_HPP_
#define DIVSUM_LINALG_HPP_

#include <span>
#include <vector>

#include "divsum/types.hpp"

namespace divsum {

// Ridge added to the Gram diagonal: kRidgeScale * mean(diag(G)).
inline constexpr double kRidgeScale = 1e-10;

double dot(const FeatureVector& a, const FeatureVector& b);

// kRidgeScale times the mean squared norm of `rows`.
double gram_ridge(std::span<const FeatureVector* const> rows);

// log det(V V^T + ridge * I) where V has `rows` as its rows. Returns 0 for an
// empty selection. A non-positive pivot yields -infinity.
double gram_logdet(std::span<const FeatureVector* const> rows, double ridge);

// Greedy log-det bookkeeping over a fixed candidate pool. Each candidate keeps
// the coefficients of its Cholesky row against the selected set, so the
// marginal gain of adding it is log(residual).
class IncrementalLogDet {
 public:
  IncrementalLogDet(std::span<const FeatureVector* const> pool, double ridge);

  // log(residual) for candidate i; -infinity once the residual vanishes.
  double gain(std::size_t i) const;
  void select(std::size_t i);
  bool selected(std::size_t i) const { return selected_[i]; }

 private:
  std::vector<const FeatureVector*> pool_;
  std::vector<std::vector<double>> coeffs_;
  std::vector<double> residual_;
  std::vector<bool> selected_;
};

}  // namespace divsum

#endif  // DIVSUM_LINALG_HPP_
