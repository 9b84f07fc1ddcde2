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

// Instance builders and independent reference implementations shared by the
// unit tests and the acceptance binary. The oracles deliberately avoid the
// library's own helpers (tie-break, linalg) so they can disagree with it.

#ifndef DIVSUM_TESTS_TEST_SUPPORT_HPP_
#define DIVSUM_TESTS_TEST_SUPPORT_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>

#include "divsum/scoring.hpp"
#include "divsum/selection.hpp"
#include "divsum/similarity.hpp"
#include "divsum/types.hpp"

namespace divsum::testing {

inline std::string item_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
  return buf;
}

inline std::vector<double> gaussian(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> v(d);
  for (double& x : v) x = nd(rng);
  return v;
}

inline Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed,
                              const char* prefix = "x") {
  std::mt19937_64 rng(seed);
  std::vector<FeatureVector> items;
  for (std::size_t i = 0; i < n; ++i) {
    items.emplace_back(item_id(prefix, i), gaussian(rng, d));
  }
  return Dataset(std::move(items));
}

inline DiversityControlSet random_control(std::size_t k, std::size_t d,
                                          std::uint64_t seed) {
  return DiversityControlSet(random_dataset(k, d, seed, "f").items());
}

inline std::vector<double> random_scores(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> out(n);
  for (double& x : out) x = u(rng);
  return out;
}

// A ScoreMatrix from explicit columns; ids are a, b, c, ...
inline ScoreMatrix matrix_from_columns(
    const std::vector<std::vector<double>>& columns,
    std::vector<double> query = {}) {
  const std::size_t rows = columns.front().size();
  std::vector<std::string> row_ids, col_ids;
  for (std::size_t r = 0; r < rows; ++r) {
    row_ids.push_back(std::string(1, static_cast<char>('a' + r)));
  }
  Matrix values(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    col_ids.push_back("F" + std::to_string(c + 1));
    for (std::size_t r = 0; r < rows; ++r) values(r, c) = columns[c][r];
  }
  if (query.empty()) query.assign(rows, 0.0);
  return ScoreMatrix(std::move(row_ids), std::move(col_ids), std::move(query),
                     std::move(values), 0.5);
}

// Random DS matrix built through the public scoring path.
struct Instance {
  Dataset dataset;
  DiversityControlSet control;
  std::vector<double> qscores;
  DiversityMatrix divmatrix;
};

inline Instance random_instance(std::size_t n, std::size_t k, std::size_t d,
                                std::uint64_t seed) {
  Dataset ds = random_dataset(n, d, seed * 3 + 1);
  DiversityControlSet ctl = random_control(k, d, seed * 3 + 2);
  QuerySpec q{"q", ReferenceSet{random_dataset(3, d, seed * 3 + 3, "q")}, {},
              "", false};
  auto qs = query_scores(q, ds);
  auto dm = diversity_matrix(ds, ctl);
  return {std::move(ds), std::move(ctl), std::move(qs), std::move(dm)};
}

inline std::set<std::string> id_set(const Summary& s) {
  const auto ids = s.ids();
  return {ids.begin(), ids.end()};
}

// --- oracles ---------------------------------------------------------------

// Plain cosine distance, written out independently.
inline double ref_distance(const FeatureVector& a, const FeatureVector& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    ab += a.values()[i] * b.values()[i];
    aa += a.values()[i] * a.values()[i];
    bb += b.values()[i] * b.values()[i];
  }
  return 1.0 - ab / (std::sqrt(aa) * std::sqrt(bb));
}

inline bool lex_less(double v1, double q1, const std::string& id1, double v2,
                     double q2, const std::string& id2) {
  return std::tie(v1, q1, id1) < std::tie(v2, q2, id2);
}

// Brute-force greedy log-det: every step recomputes log det of the full
// Gram matrix of (selected + candidate) from scratch with Eigen.
inline std::vector<std::string> det_oracle(const Dataset& ds,
                                           const std::vector<double>& a,
                                           double c, std::size_t m) {
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return lex_less(a[x], 0, ds[x].id(), a[y], 0, ds[y].id());
  });
  const auto w = std::min<std::size_t>(
      ds.size(), static_cast<std::size_t>(std::ceil(c * double(m))));
  order.resize(w);
  double sq = 0;
  for (auto r : order) {
    for (double v : ds[r].values()) sq += v * v;
  }
  const double ridge = 1e-10 * sq / double(w);

  auto logdet = [&](const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd v(rows.size(), ds.dim());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < ds.dim(); ++j) v(i, j) = ds[rows[i]].values()[j];
    }
    Eigen::MatrixXd g = v * v.transpose();
    g.diagonal().array() += ridge;
    Eigen::LDLT<Eigen::MatrixXd> f(g);
    return f.vectorD().array().log().sum();
  };

  std::vector<std::size_t> chosen;
  std::vector<std::string> out;
  std::vector<bool> used(w, false);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = w;
    double best_val = 0;
    for (std::size_t i = 0; i < w; ++i) {
      if (used[i]) continue;
      auto rows = chosen;
      rows.push_back(order[i]);
      const double val = logdet(rows);
      const auto r = order[i];
      if (best == w || val > best_val ||
          (val == best_val && lex_less(0, a[r], ds[r].id(), 0, a[order[best]],
                                       ds[order[best]].id()))) {
        best = i;
        best_val = val;
      }
    }
    used[best] = true;
    chosen.push_back(order[best]);
    out.push_back(ds[order[best]].id());
  }
  return out;
}

// --- files -------------------------------------------------------------------

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("divsum-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = file(name);
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace divsum::testing

#endif  // DIVSUM_TESTS_TEST_SUPPORT_HPP_
