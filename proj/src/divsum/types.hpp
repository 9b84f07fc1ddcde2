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

// Domain types shared by every module. All of them validate on
// construction and are immutable afterwards.

#ifndef DIVSUM_TYPES_HPP_
#define DIVSUM_TYPES_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace divsum {

enum class ErrorCode {
  kInvalidInput,  // bad arguments or violated preconditions
  kData,          // malformed or inconsistent input files
  kIo,            // file could not be opened or written
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_invalid(const std::string& what);
[[noreturn]] void throw_data(const std::string& what);
[[noreturn]] void throw_io(const std::string& what);

// An image's identity plus its embedding. Entries are finite and the norm is
// strictly positive.
class FeatureVector {
 public:
  FeatureVector(std::string id, std::vector<double> values);

  const std::string& id() const noexcept { return id_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t dim() const noexcept { return values_.size(); }
  double norm() const noexcept { return norm_; }

 private:
  std::string id_;
  std::vector<double> values_;
  double norm_ = 0.0;
};

// Non-empty ordered collection of feature vectors with unique ids and one
// shared dimension.
class Dataset {
 public:
  explicit Dataset(std::vector<FeatureVector> items);

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dim() const noexcept { return items_.front().dim(); }
  const FeatureVector& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<FeatureVector>& items() const noexcept { return items_; }
  std::optional<std::size_t> find(std::string_view id) const;
  const FeatureVector& at(std::string_view id) const;

 private:
  std::vector<FeatureVector> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Small set of embeddings defining the target visible diversity.
class DiversityControlSet {
 public:
  explicit DiversityControlSet(std::vector<FeatureVector> items)
      : items_(std::move(items)) {}

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dim() const noexcept { return items_.dim(); }
  const FeatureVector& operator[](std::size_t i) const { return items_[i]; }
  const Dataset& items() const noexcept { return items_; }

 private:
  Dataset items_;
};

struct ReferenceSet {
  Dataset refs;
};

// Classifier probabilities f(I) in [0, 1], keyed by dataset id.
struct ExternalScores {
  std::unordered_map<std::string, double> scores;
};

struct QuerySpec {
  std::string name;
  std::variant<ReferenceSet, ExternalScores> scorer;
  // attribute name -> majority (stereotype) value, e.g. gender -> male.
  std::map<std::string, std::string> ground_truth;
  // Optional label attribute used by the attribute-accuracy metric.
  std::string attribute;
  // Opt-in z-normalization of negated external scores.
  bool normalize_external = false;
};

// Validates external scores: every value finite and within [0, 1].
ExternalScores make_external_scores(
    std::unordered_map<std::string, double> scores);

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// |S| x |T_F| matrix of combined scores; rows follow dataset order and
// columns follow control-set order. Also carries the query score of every
// row, which breaks ties during selection.
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<std::string> row_ids,
              std::vector<std::string> col_ids,
              std::vector<double> query_scores, Matrix values, double alpha);

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return col_ids_.size(); }
  double at(std::size_t r, std::size_t c) const { return values_(r, c); }
  const std::string& row_id(std::size_t r) const { return row_ids_[r]; }
  const std::string& col_id(std::size_t c) const { return col_ids_[c]; }
  double query_score(std::size_t r) const { return query_scores_[r]; }
  std::span<const double> query_scores() const noexcept {
    return query_scores_;
  }
  const Matrix& values() const noexcept { return values_; }
  double alpha() const noexcept { return alpha_; }

 private:
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_ids_;
  std::vector<double> query_scores_;
  Matrix values_;
  double alpha_;
};

inline constexpr std::string_view kQueryOnly = "query-only";

struct SummaryEntry {
  std::string id;
  std::string selected_by;  // control-image id or "query-only"
  double score = 0.0;
  std::size_t round = 0;
};

struct Summary {
  std::vector<SummaryEntry> entries;
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<std::string> ids() const;
};

// Group labels used only for evaluation. Missing labels read as "unknown".
class EvaluationLabels {
 public:
  static constexpr std::string_view kUnknown = "unknown";

  void set(const std::string& id, const std::string& attribute,
           const std::string& value);
  std::string_view get(std::string_view id, std::string_view attribute) const;
  bool has(std::string_view id, std::string_view attribute) const;
  bool empty() const noexcept { return labels_.empty(); }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::map<std::string, std::map<std::string, std::string, std::less<>>,
           std::less<>>
      labels_;
};

}  // namespace divsum

#endif  // DIVSUM_TYPES_HPP_
