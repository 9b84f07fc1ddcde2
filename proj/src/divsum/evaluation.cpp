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

#include "divsum/evaluation.hpp"

#include <algorithm>
#include <cctype>

#include "divsum/linalg.hpp"
#include "divsum/similarity.hpp"

namespace divsum {
namespace {

double share(std::size_t count, std::size_t total) {
  return total == 0 ? 0.0
                    : static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

std::map<std::string, double> group_fractions(const Summary& summary,
                                              const EvaluationLabels& labels,
                                              std::string_view attribute) {
  std::map<std::string, std::size_t> counts;
  for (const auto& e : summary.entries) {
    ++counts[std::string(labels.get(e.id, attribute))];
  }
  std::map<std::string, double> out;
  for (const auto& [value, n] : counts) out[value] = share(n, summary.size());
  return out;
}

double label_coverage(const Summary& summary, const EvaluationLabels& labels,
                      std::string_view attribute) {
  std::size_t labeled = 0;
  for (const auto& e : summary.entries) {
    if (labels.get(e.id, attribute) != EvaluationLabels::kUnknown) ++labeled;
  }
  return share(labeled, summary.size());
}

std::string gender_complement(std::string_view value) {
  if (value == "male") return "female";
  if (value == "female") return "male";
  throw_invalid("stereotype direction must be 'male' or 'female', got '" +
                std::string(value) + "'");
}

double anti_stereotypical_fraction(const Summary& summary,
                                   const EvaluationLabels& labels,
                                   std::string_view majority_value,
                                   Denominator denominator,
                                   std::string_view gender_attribute) {
  const std::string anti = gender_complement(majority_value);
  std::size_t hits = 0;
  std::size_t labeled = 0;
  for (const auto& e : summary.entries) {
    const auto g = labels.get(e.id, gender_attribute);
    if (g != EvaluationLabels::kUnknown) ++labeled;
    if (g == anti) ++hits;
  }
  return share(hits,
               denominator == Denominator::kSummary ? summary.size() : labeled);
}

IntersectionalTable intersectional_table(const Summary& summary,
                                         const EvaluationLabels& labels,
                                         std::string_view majority_value,
                                         std::string_view gender_attribute,
                                         std::string_view skintone_attribute) {
  const std::string anti = gender_complement(majority_value);
  std::size_t sf = 0, sd = 0, af = 0, ad = 0;
  for (const auto& e : summary.entries) {
    const auto g = labels.get(e.id, gender_attribute);
    const auto s = labels.get(e.id, skintone_attribute);
    const bool stereo = g == majority_value;
    const bool anti_g = g == anti;
    if (s == "fair") {
      sf += stereo;
      af += anti_g;
    } else if (s == "dark") {
      sd += stereo;
      ad += anti_g;
    }
  }
  const std::size_t n = summary.size();
  IntersectionalTable t;
  t.stereo_fair = share(sf, n);
  t.stereo_dark = share(sd, n);
  t.anti_fair = share(af, n);
  t.anti_dark = share(ad, n);
  t.unlabeled = n == 0 ? 0.0 : share(n - sf - sd - af - ad, n);
  return t;
}

double accuracy_avgsim(const Summary& summary, const Dataset& dataset,
                       const Dataset& refs) {
  if (summary.size() == 0) return 0.0;
  double total = 0.0;
  for (const auto& e : summary.entries) {
    const auto& item = dataset.at(e.id);
    double s = 0.0;
    for (const auto& r : refs.items()) s += cosine_similarity(item, r);
    total += s / static_cast<double>(refs.size());
  }
  return total / static_cast<double>(summary.size());
}

bool is_positive_label(std::string_view value) {
  std::string v(value);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  return v == "1" || v == "true" || v == "yes" || v == "positive";
}

double accuracy_attribute(const Summary& summary,
                          const EvaluationLabels& labels,
                          std::string_view attribute) {
  std::size_t hits = 0;
  for (const auto& e : summary.entries) {
    if (is_positive_label(labels.get(e.id, attribute))) ++hits;
  }
  return share(hits, summary.size());
}

double nonredundancy_logdet(const Summary& summary, const Dataset& dataset) {
  std::vector<const FeatureVector*> rows;
  rows.reserve(summary.size());
  for (const auto& e : summary.entries) rows.push_back(&dataset.at(e.id));
  return gram_logdet(rows, gram_ridge(rows));
}

}  // namespace divsum
