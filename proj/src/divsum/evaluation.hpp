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

// Diversity and accuracy metrics. This is the only module that reads
// evaluation labels.

#ifndef DIVSUM_EVALUATION_HPP_
#define DIVSUM_EVALUATION_HPP_

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "divsum/types.hpp"

namespace divsum {

// Fractions are taken over the full summary by default; kLabeled divides by
// the number of summary items carrying the relevant label instead.
enum class Denominator { kSummary, kLabeled };

// Label value -> share of the summary; missing labels count as "unknown".
std::map<std::string, double> group_fractions(const Summary& summary,
                                              const EvaluationLabels& labels,
                                              std::string_view attribute);

// Share of the summary carrying any label other than "unknown".
double label_coverage(const Summary& summary, const EvaluationLabels& labels,
                      std::string_view attribute);

// "male" <-> "female"; anything else is rejected.
std::string gender_complement(std::string_view value);

// Share of the summary whose gender is the binary complement of
// `majority_value`. "other" and "unknown" only count in the denominator.
double anti_stereotypical_fraction(
    const Summary& summary, const EvaluationLabels& labels,
    std::string_view majority_value,
    Denominator denominator = Denominator::kSummary,
    std::string_view gender_attribute = "gender");

// Gender (stereotypical / anti-stereotypical) x skin tone (fair / dark).
struct IntersectionalTable {
  double stereo_fair = 0.0;
  double stereo_dark = 0.0;
  double anti_fair = 0.0;
  double anti_dark = 0.0;
  double unlabeled = 0.0;  // remainder of the summary
};

IntersectionalTable intersectional_table(
    const Summary& summary, const EvaluationLabels& labels,
    std::string_view majority_value,
    std::string_view gender_attribute = "gender",
    std::string_view skintone_attribute = "skintone");

// Mean over the summary of the mean cosine similarity to `refs`.
double accuracy_avgsim(const Summary& summary, const Dataset& dataset,
                       const Dataset& refs);

// Values read as positive by accuracy_attribute.
bool is_positive_label(std::string_view value);

// Share of the summary whose label for `attribute` is positive.
double accuracy_attribute(const Summary& summary,
                          const EvaluationLabels& labels,
                          std::string_view attribute);

// Ridge-regularized log det of the Gram matrix of the summary embeddings.
double nonredundancy_logdet(const Summary& summary, const Dataset& dataset);

}  // namespace divsum

#endif  // DIVSUM_EVALUATION_HPP_
