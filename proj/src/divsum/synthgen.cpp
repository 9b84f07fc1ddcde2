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

#include "divsum/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <set>

#include "divsum/scoring.hpp"

namespace divsum {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

enum StreamKind : std::uint64_t {
  kMean = 1,
  kTopic = 2,
  kItem = 3,
  kQueryRef = 4,
  kControl = 5,
};

std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t stream_id(StreamKind kind, std::uint64_t index) {
  return (static_cast<std::uint64_t>(kind) << 40) | index;
}

std::vector<double> gaussian_vector(const CounterRng& rng, std::size_t d) {
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = rng.normal(i);
  return v;
}

std::vector<double> unit(std::vector<double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  const double norm = std::sqrt(sq);
  if (!(norm > 0.0)) throw_invalid("synthetic vector collapsed to zero");
  for (double& x : v) x /= norm;
  return v;
}

// normalize(weight * mean + topic + spread * noise); topic may be empty.
std::vector<double> sample(const CounterRng& rng,
                           const std::vector<double>& mean, double weight,
                           const std::vector<double>* topic, double spread) {
  std::vector<double> v(mean.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = weight * mean[i] + spread * rng.normal(i);
    if (topic) v[i] += (*topic)[i];
  }
  return unit(std::move(v));
}

std::string padded(const char* prefix, std::size_t i, std::size_t width) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, static_cast<int>(width),
                i);
  return buf;
}

std::size_t digits(std::size_t n) {
  std::size_t w = 1;
  while (n >= 10) {
    n /= 10;
    ++w;
  }
  return w;
}

std::size_t majority_index(const SynthConfig& cfg) {
  std::size_t best = 0;
  for (std::size_t g = 1; g < cfg.groups.size(); ++g) {
    if (cfg.groups[g].proportion > cfg.groups[best].proportion) best = g;
  }
  return best;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ mix(stream + kGolden))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return mix(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t index) const {
  const double u1 = uniform(2 * index);
  const double u2 = uniform(2 * index + 1);
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

void validate(const SynthConfig& cfg) {
  if (cfg.n == 0) throw_invalid("synthetic dataset size must be positive");
  if (cfg.d == 0) throw_invalid("synthetic dimension must be positive");
  if (cfg.groups.empty()) throw_invalid("at least one group is required");
  if (cfg.topics == 0) throw_invalid("topic count must be positive");
  if (cfg.query_size == 0) throw_invalid("query reference size must be positive");
  if (cfg.control_per_group == 0) {
    throw_invalid("control candidates per group must be positive");
  }
  if (!(cfg.group_weight >= 0.0) || !std::isfinite(cfg.group_weight)) {
    throw_invalid("group weight must be a non-negative number");
  }
  check_unit_interval(cfg.query_bias, "query_bias");
  double total = 0.0;
  std::set<std::string> names;
  for (const auto& g : cfg.groups) {
    if (g.name.empty()) throw_invalid("group name must not be empty");
    if (!names.insert(g.name).second) {
      throw_invalid("duplicate group name '" + g.name + "'");
    }
    if (!(g.proportion >= 0.0) || !std::isfinite(g.proportion)) {
      throw_invalid("group '" + g.name + "' has an invalid proportion");
    }
    if (!(g.spread > 0.0) || !std::isfinite(g.spread)) {
      throw_invalid("group '" + g.name + "' needs a positive spread");
    }
    total += g.proportion;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw_invalid("group proportions must sum to 1");
  }
}

std::vector<std::size_t> group_counts(const SynthConfig& cfg) {
  const std::size_t k = cfg.groups.size();
  std::vector<std::size_t> counts(k);
  std::vector<double> remainder(k);
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < k; ++g) {
    const double exact = cfg.groups[g].proportion * static_cast<double>(cfg.n);
    counts[g] = static_cast<std::size_t>(std::floor(exact));
    remainder[g] = exact - std::floor(exact);
    assigned += counts[g];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t i = 0; assigned < cfg.n; ++i, ++assigned) {
    ++counts[order[i % k]];
  }
  return counts;
}

SynthInstance generate(const SynthConfig& cfg) {
  validate(cfg);
  const std::size_t k = cfg.groups.size();
  const std::size_t major = majority_index(cfg);

  std::vector<std::vector<double>> means;
  for (const auto& g : cfg.groups) {
    CounterRng rng(g.direction_seed, stream_id(kMean, 0));
    means.push_back(unit(gaussian_vector(rng, cfg.d)));
  }
  std::vector<std::vector<double>> topics;
  for (std::size_t t = 0; t < cfg.topics; ++t) {
    CounterRng rng(cfg.seed, stream_id(kTopic, t));
    topics.push_back(unit(gaussian_vector(rng, cfg.d)));
  }

  const auto counts = group_counts(cfg);
  const std::size_t width = digits(cfg.n - 1);
  std::vector<FeatureVector> items;
  items.reserve(cfg.n);
  EvaluationLabels labels;
  std::size_t next = 0;
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t j = 0; j < counts[g]; ++j, ++next) {
      const std::size_t topic = j % cfg.topics;
      CounterRng rng(cfg.seed, stream_id(kItem, next));
      auto id = padded("s", next, width);
      items.emplace_back(id, sample(rng, means[g], cfg.group_weight,
                                    &topics[topic], cfg.groups[g].spread));
      labels.set(id, cfg.attribute, cfg.groups[g].name);
      labels.set(id, "relevant", topic == 0 ? "1" : "0");
    }
  }

  // Query references: round(q * (bias + (1 - bias) * p_major)) from the
  // majority group, the rest cycling over the other groups.
  const double major_share =
      cfg.query_bias + (1.0 - cfg.query_bias) * cfg.groups[major].proportion;
  const auto major_refs = static_cast<std::size_t>(
      std::llround(major_share * static_cast<double>(cfg.query_size)));
  std::vector<std::size_t> others;
  for (std::size_t g = 0; g < k; ++g) {
    if (g != major) others.push_back(g);
  }
  std::vector<FeatureVector> refs;
  const std::size_t ref_width = digits(cfg.query_size - 1);
  for (std::size_t j = 0; j < cfg.query_size; ++j) {
    std::size_t g = major;
    if (j >= major_refs && !others.empty()) {
      g = others[(j - major_refs) % others.size()];
    }
    CounterRng rng(cfg.seed, stream_id(kQueryRef, j));
    refs.emplace_back(padded("q", j, ref_width),
                      sample(rng, means[g], cfg.group_weight, &topics[0],
                             cfg.groups[g].spread));
  }

  std::vector<std::pair<std::string, Dataset>> controls;
  const std::size_t ctl_width = digits(cfg.control_per_group - 1);
  for (std::size_t g = 0; g < k; ++g) {
    std::vector<FeatureVector> pool;
    for (std::size_t j = 0; j < cfg.control_per_group; ++j) {
      CounterRng rng(cfg.seed, stream_id(kControl, (g << 20) | j));
      pool.emplace_back(
          padded(("c-" + cfg.groups[g].name + "-").c_str(), j, ctl_width),
          sample(rng, means[g], cfg.group_weight, nullptr,
                 cfg.groups[g].spread));
    }
    controls.emplace_back(cfg.groups[g].name, Dataset(std::move(pool)));
  }

  QuerySpec query{"synthetic", ReferenceSet{Dataset(std::move(refs))}, {},
                  "relevant", false};
  query.ground_truth[cfg.attribute] = cfg.groups[major].name;

  return SynthInstance{Dataset(std::move(items)), std::move(labels),
                       std::move(controls), std::move(query),
                       cfg.groups[major].name, kSynthGenerator};
}

DiversityControlSet balanced_control_set(const SynthInstance& inst,
                                         std::size_t per_group) {
  std::vector<FeatureVector> items;
  for (const auto& [name, pool] : inst.control_candidates) {
    if (per_group > pool.size()) {
      throw_invalid("group '" + name + "' has only " +
                    std::to_string(pool.size()) + " control candidates");
    }
    for (std::size_t j = 0; j < per_group; ++j) items.push_back(pool[j]);
  }
  return DiversityControlSet(std::move(items));
}

SynthConfig planted_config(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n = 500;
  cfg.d = 16;
  cfg.groups = {{"male", 0.7, 101, 0.1}, {"female", 0.3, 202, 0.1}};
  cfg.query_bias = 1.0;
  cfg.seed = seed;
  return cfg;
}

}  // namespace divsum
