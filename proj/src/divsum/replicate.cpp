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

#include "divsum/replicate.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>

#include "divsum/config.hpp"
#include "divsum/experiment.hpp"
#include "divsum/io.hpp"

namespace divsum {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kDefaultAcquisition =
    "The replication data is not bundled. Supply embeddings, label files and\n"
    "query files in divsum formats at the paths named by the run configs\n"
    "listed in this bundle, then rerun `divsum replicate`.\n";

struct Bundle {
  std::string name;
  std::vector<PathRef> runs;
  std::string acquisition;
};

Bundle load_bundle(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::Load(read_file(path));
  } catch (const YAML::Exception& e) {
    throw_data(path + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap() || !root["runs"] || !root["runs"].IsSequence()) {
    throw_data(path + ": bundle needs a 'runs' list");
  }
  Bundle b;
  b.name = root["name"] ? root["name"].as<std::string>() : "bundle";
  b.acquisition = root["acquisition"] ? root["acquisition"].as<std::string>()
                                      : kDefaultAcquisition;
  auto base = fs::path(path).parent_path();
  for (const auto& r : root["runs"]) {
    const auto text = r.as<std::string>();
    fs::path p(text);
    if (p.is_relative()) p = base / p;
    b.runs.push_back({text, p.lexically_normal().string()});
  }
  if (b.runs.empty()) throw_data(path + ": bundle lists no runs");
  return b;
}

std::vector<std::string> missing_inputs(const Bundle& b) {
  std::vector<std::string> missing;
  for (const auto& run : b.runs) {
    if (!fs::exists(run.resolved)) {
      missing.push_back(run.resolved);
      continue;
    }
    const auto cfg = load_run_config(run.resolved);
    for (const auto* ref :
         {&cfg.embeddings, &cfg.labels, &cfg.control, &cfg.control_pool,
          &cfg.partition_labels, &cfg.query.reference, &cfg.query.scores}) {
      if (!ref->empty() && !fs::exists(ref->resolved)) {
        missing.push_back(ref->resolved);
      }
    }
  }
  return missing;
}

struct Aggregate {
  std::vector<double> values;

  json to_json() const {
    if (values.empty()) return nullptr;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return {{"mean", mean}, {"std", std::sqrt(var)}, {"n", values.size()}};
  }
};

std::string cell(const json& agg) {
  if (agg.is_null()) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f (%.2f)", agg["mean"].get<double>(),
                agg["std"].get<double>());
  return buf;
}

}  // namespace

ReplicationResult replicate_tables(const std::string& bundle_path) {
  const auto bundle = load_bundle(bundle_path);
  ReplicationResult result;
  const auto missing = missing_inputs(bundle);
  if (!missing.empty()) {
    result.message = bundle.acquisition;
    if (!result.message.empty() && result.message.back() != '\n') {
      result.message += '\n';
    }
    result.message += "Missing files:\n";
    for (const auto& m : missing) result.message += "  " + m + "\n";
    return result;
  }
  result.data_present = true;

  struct Group {
    AlgorithmSpec spec;
    std::map<std::string, Aggregate> metrics;
    json queries = json::array();
  };
  std::vector<Group> groups;
  json inputs = json::array();
  inputs.push_back({{"role", "bundle"},
                    {"path", fs::path(bundle_path).filename().string()},
                    {"sha256", sha256_file(bundle_path)}});

  for (const auto& run : bundle.runs) {
    const Session session(load_run_config(run.resolved));
    const auto& qname = session.config().query.name;
    for (const auto& in : session.inputs()) {
      inputs.push_back({{"role", qname + ":" + in.role},
                        {"path", in.path},
                        {"sha256", in.sha256}});
    }
    for (const auto& spec : session.config().algorithms) {
      const auto metrics = session.evaluate(session.run(spec));
      Group* g = nullptr;
      for (auto& existing : groups) {
        if (!section_before(existing.spec, spec) &&
            !section_before(spec, existing.spec)) {
          g = &existing;
        }
      }
      if (!g) {
        groups.push_back({spec, {}, json::array()});
        g = &groups.back();
      }
      auto add = [&](const char* key, const std::optional<double>& v) {
        if (v) g->metrics[key].values.push_back(*v);
      };
      add("anti_stereotypical_fraction", metrics.anti_stereotypical);
      add("accuracy_attribute", metrics.accuracy_attribute);
      add("accuracy_avgsim", metrics.accuracy_avgsim);
      add("gender_coverage", metrics.gender_coverage);
      g->queries.push_back({{"query", qname}, {"metrics", to_json(metrics)}});
    }
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) {
                     return section_before(a.spec, b.spec);
                   });

  json& report = result.report;
  report["schema"] = kReportSchema;
  report["kind"] = "replicate";
  report["generator"] = std::string("divsum ") + kVersion;
  report["inputs"] = inputs;
  json runs = json::array();
  for (const auto& r : bundle.runs) runs.push_back(r.written);
  report["config"] = {{"bundle", bundle.name}, {"runs", runs}};
  report["warnings"] = json::array();
  report["sections"] = json::array();

  std::string table = "algorithm            anti-stereotypical   accuracy\n";
  for (const auto& g : groups) {
    json metrics;
    for (const char* key : {"anti_stereotypical_fraction", "accuracy_attribute",
                            "accuracy_avgsim", "gender_coverage"}) {
      auto it = g.metrics.find(key);
      metrics[key] = it == g.metrics.end() ? json(nullptr) : it->second.to_json();
    }
    const auto& acc = !metrics["accuracy_attribute"].is_null()
                          ? metrics["accuracy_attribute"]
                          : metrics["accuracy_avgsim"];
    char line[160];
    std::snprintf(line, sizeof(line), "%-20s %-20s %s\n", g.spec.name.c_str(),
                  cell(metrics["anti_stereotypical_fraction"]).c_str(),
                  cell(acc).c_str());
    table += line;
    report["sections"].push_back({{"algorithm", g.spec.name},
                                  {"parameters", algorithm_parameters(g.spec)},
                                  {"summary", json::array()},
                                  {"metrics", metrics},
                                  {"notes", {"mean and population std across queries"}},
                                  {"queries", g.queries}});
  }
  result.message = table;
  return result;
}

}  // namespace divsum
