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

#include "divsum/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "divsum/scoring.hpp"
#include "divsum/tiebreak.hpp"

namespace divsum {
namespace {

using detail::ranks_before;
using detail::ranks_before_max;

// Rows of column c sorted by (score, query score, id).
std::vector<std::size_t> column_order(const ScoreMatrix& s, std::size_t c) {
  std::vector<std::size_t> order(s.rows());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(s.at(a, c), s.query_score(a), s.row_id(a), s.at(b, c),
                        s.query_score(b), s.row_id(b));
  });
  return order;
}

struct Claim {
  std::size_t row;
  std::size_t col;
  double score;
};

// Runs rounds until `limit` rows are emitted or the rows run out.
// `claimed_col`, when given, receives the claiming column of every row
// claimed along the way.
Summary round_robin(const ScoreMatrix& s, std::size_t limit,
                    std::vector<std::size_t>* claimed_col) {
  const std::size_t k = s.cols();
  std::vector<std::vector<std::size_t>> orders;
  orders.reserve(k);
  for (std::size_t c = 0; c < k; ++c) orders.push_back(column_order(s, c));
  std::vector<std::size_t> cursor(k, 0);
  std::vector<bool> claimed(s.rows(), false);

  Summary out;
  out.entries.reserve(limit);
  std::vector<Claim> round;
  for (std::size_t r = 0; out.size() < limit; ++r) {
    round.clear();
    for (std::size_t c = 0; c < k; ++c) {
      auto& pos = cursor[c];
      while (pos < orders[c].size() && claimed[orders[c][pos]]) ++pos;
      if (pos == orders[c].size()) continue;
      const std::size_t row = orders[c][pos];
      // Invalidate the row in every column, not just this one.
      claimed[row] = true;
      round.push_back({row, c, s.at(row, c)});
    }
    if (round.empty()) break;
    std::sort(round.begin(), round.end(), [&](const Claim& a, const Claim& b) {
      return ranks_before(a.score, s.query_score(a.row), s.row_id(a.row),
                          b.score, s.query_score(b.row), s.row_id(b.row));
    });
    const std::size_t take = std::min(round.size(), limit - out.size());
    for (std::size_t i = 0; i < take; ++i) {
      const auto& cl = round[i];
      out.entries.push_back({s.row_id(cl.row), s.col_id(cl.col), cl.score, r});
    }
    if (claimed_col) {
      for (const auto& cl : round) (*claimed_col)[cl.row] = cl.col;
    }
  }
  return out;
}

std::vector<std::size_t> order_by_query(std::span<const double> qscores,
                                        const Dataset& dataset) {
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ranks_before(qscores[a], qscores[a], dataset[a].id(), qscores[b],
                        qscores[b], dataset[b].id());
  });
  return order;
}

double min_control_distance(const FeatureVector& item,
                            const DiversityControlSet& control,
                            std::size_t* nearest) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < control.size(); ++c) {
    const double d = cosine_distance(item, control[c]);
    if (d < best) {
      best = d;
      if (nearest) *nearest = c;
    }
  }
  return best;
}

// Shared greedy loop for the MMR family:
//   score(I) = relevance[I] - redundancy_weight * min_{J in R} d(I, J)
// with the redundancy term 0 while R is empty.
Summary greedy_redundancy(const Dataset& dataset,
                          std::span<const double> qscores,
                          const std::vector<double>& relevance,
                          double redundancy_weight,
                          const std::vector<std::string>& selected_by,
                          std::size_t m) {
  const std::size_t n = dataset.size();
  std::vector<double> nearest(n, 0.0);
  std::vector<bool> taken(n, false);
  Summary out;
  out.entries.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = n;
    double best_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double red = step == 0 ? 0.0 : nearest[i];
      const double score = relevance[i] - redundancy_weight * red;
      if (best == n || ranks_before(score, qscores[i], dataset[i].id(),
                                    best_score, qscores[best],
                                    dataset[best].id())) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    out.entries.push_back(
        {dataset[best].id(), selected_by[best], best_score, step});
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double d = cosine_distance(dataset[i], dataset[best]);
      nearest[i] = step == 0 ? d : std::min(nearest[i], d);
    }
  }
  return out;
}

std::vector<std::string> partition_of_rows(const Dataset& dataset,
                                           const PartitionLabels& partitions) {
  std::vector<std::string> out;
  out.reserve(dataset.size());
  for (const auto& item : dataset.items()) {
    auto it = partitions.group_of.find(item.id());
    if (it == partitions.group_of.end()) {
      throw_invalid("no partition label for '" + item.id() + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

Summary qs_balanced(const ScoreMatrix& scores, std::size_t m) {
  detail::check_summary_size(m, scores.rows());
  return round_robin(scores, m, nullptr);
}

Summary rank_all(const ScoreMatrix& scores) {
  return round_robin(scores, scores.rows(), nullptr);
}

Partition round_robin_partition(const ScoreMatrix& scores) {
  Partition p{std::vector<std::size_t>(scores.rows(), 0), "round-robin"};
  round_robin(scores, scores.rows(), &p.column_of);
  return p;
}

Partition closest_control_partition(const Dataset& dataset,
                                    const DiversityControlSet& control) {
  Partition p{std::vector<std::size_t>(dataset.size(), 0), "closest-control"};
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    min_control_distance(dataset[i], control, &p.column_of[i]);
  }
  return p;
}

Summary qs_top(std::span<const double> qscores, const Dataset& dataset,
               std::size_t m) {
  detail::check_qscores(qscores, dataset);
  detail::check_summary_size(m, dataset.size());
  const auto order = order_by_query(qscores, dataset);
  Summary out;
  out.entries.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t row = order[i];
    out.entries.push_back(
        {dataset[row].id(), std::string(kQueryOnly), qscores[row], i});
  }
  return out;
}

Summary ds_top(const Dataset& dataset, std::span<const double> qscores,
               const DiversityMatrix& divmatrix, std::size_t m) {
  return qs_balanced(ds_scores(dataset, qscores, divmatrix, 1.0), m);
}

double mmod(const Dataset& dataset, std::span<const double> qscores,
            const DiversityControlSet& control, const MmrBalancedParams& params,
            const std::vector<bool>& in_r, std::size_t item) {
  detail::check_qscores(qscores, dataset);
  const auto& x = dataset[item];
  double redundancy = 2.0;
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    if (in_r[j]) redundancy = std::min(redundancy, cosine_distance(x, dataset[j]));
  }
  const double diversity = min_control_distance(x, control, nullptr);
  return (1.0 - params.alpha - params.beta) * qscores[item] +
         params.alpha * diversity - params.beta * redundancy;
}

Summary mmr_balanced(const Dataset& dataset, std::span<const double> qscores,
                     const DiversityControlSet& control,
                     const MmrBalancedParams& params, std::size_t m) {
  check_unit_interval(params.alpha, "alpha");
  check_unit_interval(params.beta, "beta");
  if (params.alpha + params.beta > 1.0) {
    throw_invalid("alpha + beta must not exceed 1");
  }
  if (control.dim() != dataset.dim()) {
    throw_invalid("control set dimension does not match dataset dimension");
  }
  detail::check_qscores(qscores, dataset);
  detail::check_summary_size(m, dataset.size());
  std::vector<double> relevance(dataset.size());
  std::vector<std::string> selected_by(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::size_t nearest = 0;
    const double div = min_control_distance(dataset[i], control, &nearest);
    relevance[i] = (1.0 - params.alpha - params.beta) * qscores[i] +
                   params.alpha * div;
    selected_by[i] = control[nearest].id();
  }
  return greedy_redundancy(dataset, qscores, relevance, params.beta,
                           selected_by, m);
}

Summary mmr(const Dataset& dataset, std::span<const double> qscores,
            double alpha, std::size_t m) {
  check_unit_interval(alpha, "alpha");
  detail::check_qscores(qscores, dataset);
  detail::check_summary_size(m, dataset.size());
  std::vector<double> relevance(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    relevance[i] = alpha * qscores[i];
  }
  return greedy_redundancy(
      dataset, qscores, relevance, 1.0 - alpha,
      std::vector<std::string>(dataset.size(), std::string(kQueryOnly)), m);
}

Summary autolabel(const Dataset& dataset, std::span<const double> qscores,
                  const PartitionLabels& partitions, std::size_t m) {
  detail::check_qscores(qscores, dataset);
  detail::check_summary_size(m, dataset.size());
  const auto group = partition_of_rows(dataset, partitions);
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t row : order_by_query(qscores, dataset)) {
    members[group[row]].push_back(row);
  }
  if (members.size() != 2) {
    throw_invalid("autolabel needs exactly two partitions, got " +
                  std::to_string(members.size()));
  }
  const std::size_t larger = (m + 1) / 2;
  for (const auto& [name, rows] : members) {
    if (rows.size() < larger) {
      throw_invalid("partition '" + name + "' has " +
                    std::to_string(rows.size()) + " members, needs " +
                    std::to_string(larger));
    }
  }
  auto first = members.begin();
  auto second = std::next(first);
  const std::size_t a = first->second.front();
  const std::size_t b = second->second.front();
  const bool first_leads = ranks_before(qscores[a], qscores[a], dataset[a].id(),
                                        qscores[b], qscores[b], dataset[b].id());
  const std::size_t take_first = first_leads ? larger : m - larger;
  const std::size_t take_second = m - take_first;

  std::vector<std::size_t> picked(first->second.begin(),
                                  first->second.begin() + take_first);
  picked.insert(picked.end(), second->second.begin(),
                second->second.begin() + take_second);
  std::sort(picked.begin(), picked.end(), [&](std::size_t x, std::size_t y) {
    return ranks_before(qscores[x], qscores[x], dataset[x].id(), qscores[y],
                        qscores[y], dataset[y].id());
  });
  Summary out;
  for (std::size_t i = 0; i < picked.size(); ++i) {
    const std::size_t row = picked[i];
    out.entries.push_back(
        {dataset[row].id(), std::string(kQueryOnly), qscores[row], i});
  }
  return out;
}

Summary autolabel_rwd(const Dataset& dataset, std::span<const double> qscores,
                      const PartitionLabels& partitions, std::size_t m) {
  detail::check_qscores(qscores, dataset);
  detail::check_summary_size(m, dataset.size());
  const auto group = partition_of_rows(dataset, partitions);
  const double top = *std::max_element(qscores.begin(), qscores.end());
  std::vector<double> utility(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) utility[i] = top - qscores[i];

  std::map<std::string, double> mass;
  for (const auto& g : group) mass.emplace(g, 0.0);
  std::vector<bool> taken(dataset.size(), false);
  double reward = 0.0;
  Summary out;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = dataset.size();
    double best_gain = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      if (taken[i]) continue;
      const double t = mass[group[i]];
      const double gain = utility[i] + std::sqrt(t + utility[i]) - std::sqrt(t);
      if (best == dataset.size() ||
          ranks_before_max(gain, qscores[i], dataset[i].id(), best_gain,
                           qscores[best], dataset[best].id())) {
        best = i;
        best_gain = gain;
      }
    }
    taken[best] = true;
    mass[group[best]] += utility[best];
    reward += best_gain;
    out.entries.push_back(
        {dataset[best].id(), std::string(kQueryOnly), reward, step});
  }
  return out;
}

}  // namespace divsum
