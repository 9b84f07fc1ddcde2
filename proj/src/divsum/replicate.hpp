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

// Table replication over externally supplied corpora. A bundle is a YAML
// file listing one run config per query:
//
//   name: occupations
//   runs: [queries/nurse.yaml, queries/ceo.yaml]
//   acquisition: |
//     How to obtain the embeddings and label files.
//
// Every configured algorithm runs on every query; each metric is reported
// as mean and population standard deviation across queries.

#ifndef DIVSUM_REPLICATE_HPP_
#define DIVSUM_REPLICATE_HPP_

#include <json.hpp>

#include <string>
#include <vector>

namespace divsum {

struct ReplicationResult {
  bool data_present = false;
  // Acquisition instructions when data is missing, else a text table.
  std::string message;
  nlohmann::ordered_json report;
};

ReplicationResult replicate_tables(const std::string& bundle_path);

}  // namespace divsum

#endif  // DIVSUM_REPLICATE_HPP_
