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

// Experiment orchestration: a Session owns every input named by a run
// config, runs algorithms on it and assembles JSON reports. Report bytes are
// a pure function of the input files and the config; concurrent runs are
// reassembled in a fixed order.

#ifndef DIVSUM_EXPERIMENT_HPP_
#define DIVSUM_EXPERIMENT_HPP_

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "divsum/config.hpp"
#include "divsum/evaluation.hpp"
#include "divsum/io.hpp"
#include "divsum/selection.hpp"
#include "divsum/similarity.hpp"
#include "divsum/synthgen.hpp"
#include "divsum/types.hpp"

namespace divsum {

inline constexpr const char* kReportSchema = "divsum.report/1";
inline constexpr const char* kVersion = "0.1.0";

// Control sets above this size draw a warning.
inline constexpr std::size_t kLargeControlSet = 64;

struct InputDigest {
  std::string role;
  std::string path;  // as written in the config
  std::string sha256;
};

struct Metrics {
  std::size_t size = 0;
  std::optional<double> anti_stereotypical;
  std::optional<double> accuracy_avgsim;
  std::optional<double> accuracy_attribute;
  std::optional<double> gender_coverage;
  std::map<std::string, double> gender_fractions;
  std::map<std::string, double> skintone_fractions;
  std::optional<IntersectionalTable> intersectional;
  double nonredundancy_logdet = 0.0;
  std::map<std::string, std::size_t> selected_by;
  std::vector<std::string> notes;
};

nlohmann::ordered_json to_json(const Metrics& metrics);
nlohmann::ordered_json to_json(const Summary& summary);

class Session {
 public:
  // Loads and cross-validates every input. Problems with the files or the
  // config surface as data errors.
  explicit Session(RunConfig config);

  const RunConfig& config() const noexcept { return config_; }
  const Dataset& dataset() const noexcept { return dataset_; }
  const QuerySpec& query() const noexcept { return query_; }
  const std::vector<double>& query_scores() const noexcept { return qscores_; }
  bool has_control() const noexcept { return control_.has_value(); }
  const DiversityControlSet& control() const;
  const EvaluationLabels* labels() const {
    return labels_ ? &*labels_ : nullptr;
  }
  const std::vector<InputDigest>& inputs() const noexcept { return inputs_; }
  const std::vector<std::string>& warnings() const noexcept {
    return warnings_;
  }

  Summary run(const AlgorithmSpec& spec) const;
  Summary run(const AlgorithmSpec& spec,
              const DiversityControlSet& control) const;

  // Unbounded round-robin ranking at the given DS tradeoff.
  Summary rank(double alpha) const;

  Metrics evaluate(const Summary& summary) const;

  // Reads a summary CSV (header with an `id` column; other columns are
  // ignored) and checks every id against the dataset.
  Summary load_summary(const std::string& path) const;

  // Control set with round(share * size) members from the first composition
  // group and the rest from the second, each taken from the front of its
  // pool.
  DiversityControlSet compose_control_set(const SweepConfig& sweep,
                                          double share) const;

 private:
  Summary run_with(const AlgorithmSpec& spec, const DiversityControlSet* control,
                   const DiversityMatrix* divmatrix) const;

  RunConfig config_;
  Dataset dataset_;
  QuerySpec query_;
  std::vector<double> qscores_;
  std::optional<DiversityControlSet> control_;
  std::optional<DiversityMatrix> divmatrix_;
  std::optional<EvaluationLabels> labels_;
  std::optional<PartitionLabels> partitions_;
  std::vector<InputDigest> inputs_;
  std::vector<std::string> warnings_;
};

// Parameters that matter for `spec.name`, in a fixed order.
nlohmann::ordered_json algorithm_parameters(const AlgorithmSpec& spec);

// Strict ordering of sections: algorithm name, then parameter values.
bool section_before(const AlgorithmSpec& a, const AlgorithmSpec& b);

// Sets the weight that `alpha` names for the algorithm (see config.hpp).
void set_alpha(AlgorithmSpec& spec, double alpha);

nlohmann::ordered_json report_header(const Session& session,
                                     const std::string& kind);

nlohmann::ordered_json run_summarize(const Session& session,
                                     const AlgorithmSpec& spec);
nlohmann::ordered_json run_compare(const Session& session);
nlohmann::ordered_json run_evaluate(const Session& session,
                                    const Summary& summary,
                                    const std::string& label);

struct SweepResult {
  nlohmann::ordered_json report;
  std::string csv;
};

SweepResult run_sweep(const Session& session, const SweepConfig& sweep);

// rank,id,selected_by,score,round
std::string summary_csv(const Summary& summary);

// Human-readable inventory of a validated session.
std::string describe(const Session& session);

std::string dump_report(const nlohmann::ordered_json& report);

// Writes a synthetic instance as a ready-to-run directory: embeddings,
// labels, query references, per-group control candidates, a balanced
// control set (`balanced` per group), partition labels and run.yaml.
// Returns the written file names.
std::vector<std::string> write_synth_bundle(const SynthConfig& cfg,
                                            const std::string& out_dir,
                                            EmbeddingFormat format,
                                            std::size_t balanced);

}  // namespace divsum

#endif  // DIVSUM_EXPERIMENT_HPP_
