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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "divsum/linalg.hpp"
#include "divsum/selection.hpp"
#include "divsum/tiebreak.hpp"

namespace divsum {

Summary det_greedy(const Dataset& dataset, std::span<const double> qscores,
                   double c, std::size_t m) {
  if (!(c >= 1.0) || !std::isfinite(c)) {
    throw_invalid("DET oversampling factor must be at least 1");
  }
  detail::check_qscores(qscores, dataset);
  detail::check_summary_size(m, dataset.size());

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return detail::ranks_before(qscores[a], qscores[a], dataset[a].id(),
                                qscores[b], qscores[b], dataset[b].id());
  });
  const double wanted = std::ceil(c * static_cast<double>(m));
  const std::size_t pool_size =
      std::min(dataset.size(), static_cast<std::size_t>(wanted));
  order.resize(pool_size);

  std::vector<const FeatureVector*> pool;
  pool.reserve(pool_size);
  for (std::size_t row : order) pool.push_back(&dataset[row]);
  IncrementalLogDet logdet(pool, gram_ridge(pool));

  Summary out;
  out.entries.reserve(m);
  double total = 0.0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = pool_size;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < pool_size; ++i) {
      if (logdet.selected(i)) continue;
      const double g = logdet.gain(i);
      const std::size_t r = order[i];
      if (best == pool_size ||
          detail::ranks_before_max(g, qscores[r], dataset[r].id(), best_gain,
                                   qscores[order[best]],
                                   dataset[order[best]].id())) {
        best = i;
        best_gain = g;
      }
    }
    logdet.select(best);
    total += best_gain;
    out.entries.push_back(
        {dataset[order[best]].id(), std::string(kQueryOnly), total, step});
  }
  return out;
}

}  // namespace divsum
