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

#include "divsum/types.hpp"

#include <cmath>

namespace divsum {

void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}
void throw_data(const std::string& what) {
  throw Error(ErrorCode::kData, what);
}
void throw_io(const std::string& what) { throw Error(ErrorCode::kIo, what); }

FeatureVector::FeatureVector(std::string id, std::vector<double> values)
    : id_(std::move(id)), values_(std::move(values)) {
  if (id_.empty()) throw_invalid("feature vector id must not be empty");
  if (values_.empty()) {
    throw_invalid("feature vector '" + id_ + "' has no coordinates");
  }
  double sq = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw_invalid("feature vector '" + id_ + "' has a non-finite entry");
    }
    sq += v * v;
  }
  norm_ = std::sqrt(sq);
  if (!(norm_ > 0.0)) {
    throw_invalid("feature vector '" + id_ + "' has zero norm");
  }
}

Dataset::Dataset(std::vector<FeatureVector> items) : items_(std::move(items)) {
  if (items_.empty()) throw_invalid("dataset must not be empty");
  const std::size_t d = items_.front().dim();
  index_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].dim() != d) {
      throw_invalid("dimension mismatch for '" + items_[i].id() + "': " +
                    std::to_string(items_[i].dim()) + " != " +
                    std::to_string(d));
    }
    if (!index_.emplace(items_[i].id(), i).second) {
      throw_invalid("duplicate id '" + items_[i].id() + "'");
    }
  }
}

std::optional<std::size_t> Dataset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const FeatureVector& Dataset::at(std::string_view id) const {
  auto pos = find(id);
  if (!pos) throw_invalid("unknown id '" + std::string(id) + "'");
  return items_[*pos];
}

ExternalScores make_external_scores(
    std::unordered_map<std::string, double> scores) {
  for (const auto& [id, s] : scores) {
    if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
      throw_invalid("external score for '" + id + "' outside [0, 1]");
    }
  }
  return ExternalScores{std::move(scores)};
}

ScoreMatrix::ScoreMatrix(std::vector<std::string> row_ids,
                         std::vector<std::string> col_ids,
                         std::vector<double> query_scores, Matrix values,
                         double alpha)
    : row_ids_(std::move(row_ids)),
      col_ids_(std::move(col_ids)),
      query_scores_(std::move(query_scores)),
      values_(std::move(values)),
      alpha_(alpha) {
  if (row_ids_.empty() || col_ids_.empty()) {
    throw_invalid("score matrix must have at least one row and one column");
  }
  if (values_.rows() != row_ids_.size() || values_.cols() != col_ids_.size() ||
      query_scores_.size() != row_ids_.size()) {
    throw_invalid("score matrix shape does not match its labels");
  }
  for (double v : values_.data()) {
    if (!std::isfinite(v)) throw_invalid("score matrix entry is not finite");
  }
  for (double v : query_scores_) {
    if (!std::isfinite(v)) throw_invalid("query score is not finite");
  }
}

std::vector<std::string> Summary::ids() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.id);
  return out;
}

void EvaluationLabels::set(const std::string& id, const std::string& attribute,
                           const std::string& value) {
  labels_[id][attribute] = value;
}

std::string_view EvaluationLabels::get(std::string_view id,
                                       std::string_view attribute) const {
  auto it = labels_.find(id);
  if (it == labels_.end()) return kUnknown;
  auto jt = it->second.find(attribute);
  if (jt == it->second.end()) return kUnknown;
  return jt->second;
}

bool EvaluationLabels::has(std::string_view id,
                           std::string_view attribute) const {
  auto it = labels_.find(id);
  return it != labels_.end() && it->second.contains(attribute);
}

}  // namespace divsum
