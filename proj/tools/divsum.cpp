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

// divsum command line. Talks to the engine only through the C API.
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "divsum/divsum.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Failure {
  dvs_status status;
};

void check(dvs_status status) {
  if (status != DVS_OK) throw Failure{status};
}

struct CString {
  char* p = nullptr;
  ~CString() { dvs_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

using SessionPtr = std::unique_ptr<dvs_session, decltype(&dvs_session_free)>;

SessionPtr open_session(const std::string& config) {
  dvs_session* s = nullptr;
  check(dvs_session_open(config.c_str(), &s));
  return SessionPtr(s, dvs_session_free);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "divsum: cannot write '" << path << "'\n";
    throw Failure{DVS_ERR_IO};
  }
}

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Parameter overrides shared by the config-driven subcommands.
struct Overrides {
  std::map<std::string, double> values;

  void add(CLI::App* cmd) {
    for (const char* name : {"alpha", "balanced_alpha", "beta", "mmr_alpha",
                             "c", "u", "l"}) {
      cmd->add_option_function<double>(
          std::string("--") + name,
          [this, name](double v) { values[name] = v; },
          std::string("override selection parameter ") + name);
    }
    cmd->add_option_function<std::size_t>(
        "-m,--m", [this](std::size_t v) { values["m"] = static_cast<double>(v); },
        "summary size");
  }

  void apply(dvs_session* s) const {
    for (const auto& [k, v] : values) check(dvs_session_set_param(s, k.c_str(), v));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divsum: diverse summarization with diversity control sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dvs_version());

  std::string config, out, csv_out, algorithm, format = "json";
  std::string summary_path, param, values, kind = "config", out_dir, groups;
  Overrides overrides;

  auto* summarize = app.add_subcommand("summarize", "select one summary");
  summarize->add_option("config", config, "run config (YAML)")->required();
  summarize->add_option("-a,--algorithm", algorithm,
                        "algorithm (default: first configured)");
  summarize->add_option("-f,--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  summarize->add_option("-o,--out", out, "output file (default stdout)");
  overrides.add(summarize);

  auto* rank = app.add_subcommand("rank", "rank every item (CSV)");
  rank->add_option("config", config, "run config (YAML)")->required();
  rank->add_option("-o,--out", out, "output file (default stdout)");
  overrides.add(rank);

  auto* evaluate =
      app.add_subcommand("evaluate", "compute metrics for a summary file");
  evaluate->add_option("config", config, "run config (YAML)")->required();
  evaluate->add_option("-s,--summary", summary_path,
                       "summary CSV with an id column")
      ->required();
  evaluate->add_option("-o,--out", out, "output file (default stdout)");

  auto* compare =
      app.add_subcommand("compare", "run every configured algorithm");
  compare->add_option("config", config, "run config (YAML)")->required();
  compare->add_option("-o,--out", out, "output file (default stdout)");
  overrides.add(compare);

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
  sweep->add_option("config", config, "run config (YAML)")->required();
  sweep->add_option("-p,--param", param,
                    "alpha, control_composition or summary_size")
      ->check(CLI::IsMember({"alpha", "control_composition", "summary_size"}));
  sweep->add_option("-v,--values", values, "a,b,c or start:stop:step");
  sweep->add_option("-o,--out", out, "JSON report file (default stdout)");
  sweep->add_option("--csv", csv_out, "CSV output file");

  dvs_synth_options synth_opts;
  dvs_synth_options_default(&synth_opts);
  bool binary = false;
  auto* synth = app.add_subcommand("synth", "write a synthetic corpus");
  synth->add_option("-o,--out-dir", out_dir, "output directory")->required();
  synth->add_option("--n", synth_opts.n, "number of items");
  synth->add_option("--d", synth_opts.d, "embedding dimension");
  synth->add_option("--groups", groups,
                    "name:proportion:direction_seed:spread,...");
  synth->add_option("--query-bias", synth_opts.query_bias,
                    "query reference alignment with the majority group");
  synth->add_option("--seed", synth_opts.seed, "random seed");
  synth->add_option("--topics", synth_opts.topics, "topic count");
  synth->add_option("--group-weight", synth_opts.group_weight,
                    "weight of the group direction");
  synth->add_option("--query-size", synth_opts.query_size,
                    "query reference set size");
  synth->add_option("--control-per-group", synth_opts.control_per_group,
                    "control candidates per group");
  synth->add_option("--balanced", synth_opts.balanced_per_group,
                    "members per group in control.csv");
  synth->add_flag("--binary", binary, "write embeddings in the binary format");

  std::string path;
  auto* validate = app.add_subcommand("validate", "validate a config or file");
  validate->add_option("path", path, "file to validate")->required();
  validate->add_option("-k,--kind", kind,
                       "config, embeddings, labels, scores, partitions, query")
      ->check(CLI::IsMember(
          {"config", "embeddings", "labels", "scores", "partitions", "query"}));

  auto* replicate = app.add_subcommand(
      "replicate", "rerun table comparisons on a supplied corpus bundle");
  replicate->add_option("bundle", path, "bundle file (YAML)")->required();
  replicate->add_option("-o,--out", out, "JSON report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (summarize->parsed()) {
      auto s = open_session(config);
      overrides.apply(s.get());
      const char* alg = algorithm.empty() ? nullptr : algorithm.c_str();
      if (format == "csv") {
        dvs_summary* raw = nullptr;
        check(dvs_session_summary(s.get(), alg, &raw));
        std::unique_ptr<dvs_summary, decltype(&dvs_summary_free)> sum(
            raw, dvs_summary_free);
        std::string text = "rank,id,selected_by,score,round\n";
        for (size_t i = 0; i < dvs_summary_size(raw); ++i) {
          text += std::to_string(i + 1) + "," + dvs_summary_id(raw, i) + "," +
                  dvs_summary_selected_by(raw, i) + "," +
                  number(dvs_summary_score(raw, i)) + "," +
                  std::to_string(dvs_summary_round(raw, i)) + "\n";
        }
        for (size_t i = 0; i < dvs_summary_note_count(raw); ++i) {
          std::cerr << "note: " << dvs_summary_note(raw, i) << "\n";
        }
        emit(text, out);
      } else {
        CString report;
        check(dvs_session_summarize(s.get(), alg, &report.p));
        emit(report.str(), out);
      }
    } else if (rank->parsed()) {
      auto s = open_session(config);
      overrides.apply(s.get());
      CString text;
      check(dvs_session_rank(s.get(), &text.p));
      emit(text.str(), out);
    } else if (evaluate->parsed()) {
      auto s = open_session(config);
      CString report;
      check(dvs_session_evaluate(s.get(), summary_path.c_str(), &report.p));
      emit(report.str(), out);
    } else if (compare->parsed()) {
      auto s = open_session(config);
      overrides.apply(s.get());
      CString report;
      check(dvs_session_compare(s.get(), &report.p));
      emit(report.str(), out);
    } else if (sweep->parsed()) {
      auto s = open_session(config);
      CString report, csv;
      check(dvs_session_sweep(s.get(), param.empty() ? nullptr : param.c_str(),
                              values.empty() ? nullptr : values.c_str(),
                              &report.p, &csv.p));
      if (!csv_out.empty()) emit(csv.str(), csv_out);
      emit(report.str(), out);
    } else if (synth->parsed()) {
      synth_opts.groups = groups.empty() ? nullptr : groups.c_str();
      synth_opts.binary = binary ? 1 : 0;
      CString manifest;
      check(dvs_synth_write(&synth_opts, out_dir.c_str(), &manifest.p));
      std::cout << manifest.str();
    } else if (validate->parsed()) {
      CString text;
      check(dvs_validate_file(kind.c_str(), path.c_str(), &text.p));
      std::cout << text.str();
    } else if (replicate->parsed()) {
      int present = 0;
      CString report, message;
      check(dvs_replicate(path.c_str(), &present, &report.p, &message.p));
      if (!present) {
        std::cout << message.str();
        return kExitOk;
      }
      std::cerr << message.str();
      emit(report.str(), out);
    }
  } catch (const Failure& f) {
    if (const char* msg = dvs_last_error(); msg && *msg) {
      std::cerr << "divsum: " << msg << "\n";
    }
    return f.status == DVS_ERR_INVALID ? kExitUsage : kExitData;
  }
  return kExitOk;
}
