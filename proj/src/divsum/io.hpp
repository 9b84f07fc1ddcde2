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

// File formats.
//
// Embeddings, CSV: UTF-8, optional leading '#' comment lines, header
//   id,v0,...,v{d-1}, one row per item, decimal floats.
// Embeddings, binary: "DVSM", u32 count, u32 dim, then count ids as
//   (u32 byte length, bytes), then count * dim IEEE-754 doubles. All
//   integers and doubles little-endian.
// Labels: CSV header id,attribute,value.
// External scores: CSV header id,score with scores in [0, 1].
// Partition labels: CSV header id,label.
// Control set: either an embeddings file, or CSV header id listing ids that
//   are resolved against a pool of embeddings.
//
// Every loader validates the whole file and throws a data error carrying the
// path and line number on the first problem.

#ifndef DIVSUM_IO_HPP_
#define DIVSUM_IO_HPP_

#include <string>
#include <vector>

#include "divsum/selection.hpp"
#include "divsum/types.hpp"

namespace divsum {

enum class EmbeddingFormat { kCsv, kBinary };

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

Dataset load_embeddings(const std::string& path);
void save_embeddings(const Dataset& dataset, const std::string& path,
                     EmbeddingFormat format,
                     const std::vector<std::string>& comments = {});

EvaluationLabels load_labels(const std::string& path);
void save_labels(const EvaluationLabels& labels, const Dataset& dataset,
                 const std::vector<std::string>& attributes,
                 const std::string& path);

DiversityControlSet load_control_set(const std::string& path,
                                     const Dataset& pool);

ExternalScores load_external_scores(const std::string& path);
PartitionLabels load_partition_labels(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// Lowercase hex SHA-256 of the file contents.
std::string sha256_file(const std::string& path);
std::string sha256_hex(const std::string& bytes);

}  // namespace divsum

#endif  // DIVSUM_IO_HPP_
