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

// Seeded synthetic corpora with planted group structure.
//
// Every item is normalize(group_weight * m_g + t_k + spread_g * e), where m_g
// is the group's mean direction, t_k one of `topics` topic directions
// (assigned round-robin within each group) and e standard Gaussian noise.
// Topic 0 is the query topic: the query reference set holds topic-0 samples,
// drawn from the majority group with weight query_bias. Control candidates
// are normalize(group_weight * m_g + spread_g * e), i.e. group only.
//
// Randomness comes from a counter-based generator so any implementation can
// reproduce the streams:
//   mix(z)        = SplitMix64 finalizer
//                   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//                   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
//   key(s, id)    = mix(s ^ mix(id + 0x9E3779B97F4A7C15))
//   bits(key, i)  = mix(key + (i + 1) * 0x9E3779B97F4A7C15)
//   uniform(k, i) = (bits(k, i) >> 11) * 2^-53
//   normal(k, j)  = sqrt(-2 ln(1 - uniform(k, 2j))) * cos(2 pi uniform(k, 2j+1))
// Stream ids: (kind << 40) | index, with kinds 1 = group mean (seeded by the
// group's direction seed), 2 = topic, 3 = item, 4 = query reference,
// 5 = control candidate (index = group << 20 | j).

#ifndef DIVSUM_SYNTHGEN_HPP_
#define DIVSUM_SYNTHGEN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "divsum/types.hpp"

namespace divsum {

inline constexpr const char* kSynthGenerator =
    "divsum-synth/1 (splitmix64 counter streams, box-muller)";

struct SynthGroup {
  std::string name;
  double proportion = 0.5;
  std::uint64_t direction_seed = 0;
  double spread = 0.1;
};

struct SynthConfig {
  std::size_t n = 500;
  std::size_t d = 16;
  std::vector<SynthGroup> groups;
  double query_bias = 1.0;
  std::uint64_t seed = 0;
  std::size_t topics = 5;
  double group_weight = 1.1;
  std::size_t query_size = 10;
  std::size_t control_per_group = 8;
  std::string attribute = "gender";
};

struct SynthInstance {
  Dataset dataset;
  EvaluationLabels labels;
  // Control candidates per group, in group order.
  std::vector<std::pair<std::string, Dataset>> control_candidates;
  QuerySpec query;
  std::string majority;
  std::string generator;
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t bits(std::uint64_t counter) const;
  double uniform(std::uint64_t counter) const;
  double normal(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

void validate(const SynthConfig& cfg);

// Per-group item counts: largest-remainder rounding of proportion * n, ties
// to the earlier group.
std::vector<std::size_t> group_counts(const SynthConfig& cfg);

SynthInstance generate(const SynthConfig& cfg);

// The first `per_group` candidates of every group.
DiversityControlSet balanced_control_set(const SynthInstance& inst,
                                         std::size_t per_group);

// The two-group planted instance used by the regression and sweep checks:
// male 0.7 / female 0.3, n = 500, d = 16, spread 0.1, query_bias = 1.
SynthConfig planted_config(std::uint64_t seed = 20240601);

}  // namespace divsum

#endif  // DIVSUM_SYNTHGEN_HPP_
