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


// The shared library as a C caller sees it.

#include "divsum/divsum.h"

#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <algorithm>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct Text {
  char* p = nullptr;
  ~Text() { dvs_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

class CApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("divsum-capi-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }

  std::string synth() {
    dvs_synth_options opts;
    dvs_synth_options_default(&opts);
    Text manifest;
    EXPECT_EQ(dvs_synth_write(&opts, dir_.c_str(), &manifest.p), DVS_OK)
        << dvs_last_error();
    return (dir_ / "run.yaml").string();
  }

  fs::path dir_;
};

// Four points on the unit circle, two control images.
struct Toy {
  dvs_dataset* data = nullptr;
  dvs_dataset* ctl_items = nullptr;
  dvs_control_set* ctl = nullptr;
  std::vector<double> q{-1.0, -0.5, 0.5, 1.0, 0.0, 0.2};

  Toy() {
    const char* ids[] = {"a", "b", "c", "d", "e", "f"};
    const double values[] = {1, 0, 0.9, 0.1, 0, 1, 0.1, 0.9, -1, 0, 0, -1};
    EXPECT_EQ(dvs_dataset_create(ids, values, 6, 2, &data), DVS_OK);
    const char* cids[] = {"fx", "fy"};
    const double cvals[] = {1, 0, 0, 1};
    EXPECT_EQ(dvs_dataset_create(cids, cvals, 2, 2, &ctl_items), DVS_OK);
    EXPECT_EQ(dvs_control_set_create(ctl_items, &ctl), DVS_OK);
  }
  ~Toy() {
    dvs_control_set_free(ctl);
    dvs_dataset_free(ctl_items);
    dvs_dataset_free(data);
  }
};

TEST(CApi, VersionAndDefaults) {
  EXPECT_STREQ(dvs_version(), "0.1.0");
  dvs_params p;
  dvs_params_default(&p);
  EXPECT_EQ(p.m, 50u);
  EXPECT_DOUBLE_EQ(p.alpha, 0.5);
  EXPECT_DOUBLE_EQ(p.balanced_alpha, 0.33);
  EXPECT_DOUBLE_EQ(p.beta, 0.33);
  EXPECT_DOUBLE_EQ(p.c, 3.0);
  EXPECT_LT(p.l, p.u);
}

TEST(CApi, NullFreesAreNoOps) {
  dvs_dataset_free(nullptr);
  dvs_control_set_free(nullptr);
  dvs_summary_free(nullptr);
  dvs_session_free(nullptr);
  dvs_string_free(nullptr);
}

TEST(CApi, SelectAndReadSummary) {
  Toy t;
  EXPECT_EQ(dvs_dataset_size(t.data), 6u);
  EXPECT_EQ(dvs_dataset_dim(t.data), 2u);
  EXPECT_EQ(dvs_control_set_size(t.ctl), 2u);
  dvs_params p;
  dvs_params_default(&p);
  p.m = 4;
  dvs_summary* s = nullptr;
  ASSERT_EQ(dvs_select("qs_balanced", t.data, t.q.data(), t.ctl, nullptr, &p, &s),
            DVS_OK)
      << dvs_last_error();
  ASSERT_EQ(dvs_summary_size(s), 4u);
  int by_x = 0;
  for (size_t i = 0; i < 4; ++i) by_x += std::string(dvs_summary_selected_by(s, i)) == "fx";
  EXPECT_EQ(by_x, 2);
  EXPECT_STREQ(dvs_summary_id(s, 0), "a");
  EXPECT_EQ(dvs_summary_round(s, 3), 1u);
  EXPECT_EQ(dvs_summary_note_count(s), 0u);
  dvs_summary_free(s);
}

TEST(CApi, EveryAlgorithmRuns) {
  Toy t;
  dvs_params p;
  dvs_params_default(&p);
  p.m = 2;
  const char* parts[] = {"p", "p", "q", "q", "p", "q"};
  for (const char* name : {"qs_balanced", "mmr_balanced", "dds", "qs", "ds", "mmr",
                           "det", "autolabel", "autolabel_rwd"}) {
    dvs_summary* s = nullptr;
    ASSERT_EQ(dvs_select(name, t.data, t.q.data(), t.ctl, parts, &p, &s), DVS_OK)
        << name << ": " << dvs_last_error();
    EXPECT_EQ(dvs_summary_size(s), 2u) << name;
    dvs_summary_free(s);
  }
}

TEST(CApi, ErrorsMapToStatusCodes) {
  Toy t;
  dvs_summary* s = nullptr;
  EXPECT_EQ(dvs_select("bogus", t.data, t.q.data(), t.ctl, nullptr, nullptr, &s),
            DVS_ERR_INVALID);
  EXPECT_NE(std::string(dvs_last_error()).find("bogus"), std::string::npos);
  dvs_params p;
  dvs_params_default(&p);
  EXPECT_EQ(dvs_select("qs", t.data, t.q.data(), nullptr, nullptr, &p, &s),
            DVS_ERR_INVALID);  // m = 50 > 6
  p.m = 2;
  EXPECT_EQ(dvs_select("qs_balanced", t.data, t.q.data(), nullptr, nullptr, &p, &s),
            DVS_ERR_INVALID);
  EXPECT_EQ(dvs_select("autolabel", t.data, t.q.data(), nullptr, nullptr, &p, &s),
            DVS_ERR_INVALID);
  p.alpha = 2;
  EXPECT_EQ(dvs_select("qs_balanced", t.data, t.q.data(), t.ctl, nullptr, &p, &s),
            DVS_ERR_INVALID);
  EXPECT_EQ(s, nullptr);

  dvs_dataset* d = nullptr;
  const char* ids[] = {"x", "x"};
  const double v[] = {1, 2};
  EXPECT_NE(dvs_dataset_create(ids, v, 2, 1, &d), DVS_OK);
  EXPECT_EQ(dvs_dataset_load("/no/such/file.csv", &d), DVS_ERR_IO);
  EXPECT_EQ(d, nullptr);
}

TEST(CApi, QueryScores) {
  Toy t;
  std::vector<double> out(6);
  const char* ids[] = {"a", "b", "c", "d", "e", "f"};
  const double probs[] = {0.9, 0.8, 0.1, 0.2, 0.5, 0.4};
  ASSERT_EQ(dvs_query_scores_external(t.data, ids, probs, 6, 0, out.data()), DVS_OK);
  EXPECT_DOUBLE_EQ(out[0], -0.9);
  EXPECT_EQ(dvs_query_scores_external(t.data, ids, probs, 5, 0, out.data()),
            DVS_ERR_INVALID);
  ASSERT_EQ(dvs_query_scores_reference(t.data, t.ctl_items, out.data()), DVS_OK);
  double mean = 0;
  for (double x : out) mean += x;
  EXPECT_NEAR(mean, 0.0, 1e-12);
}

TEST(CApi, RankCoversEveryRow) {
  Toy t;
  dvs_summary* s = nullptr;
  ASSERT_EQ(dvs_rank(t.data, t.q.data(), t.ctl, 0.5, &s), DVS_OK);
  EXPECT_EQ(dvs_summary_size(s), 6u);
  dvs_summary_free(s);
}

TEST_F(CApiTest, SessionRoundTrip) {
  const auto cfg = synth();
  dvs_session* s = nullptr;
  ASSERT_EQ(dvs_session_open(cfg.c_str(), &s), DVS_OK) << dvs_last_error();
  std::unique_ptr<dvs_session, decltype(&dvs_session_free)> guard(s, dvs_session_free);

  Text report;
  ASSERT_EQ(dvs_session_summarize(s, "qs", &report.p), DVS_OK);
  EXPECT_NE(report.str().find("\"schema\": \"divsum.report/1\""), std::string::npos);

  ASSERT_EQ(dvs_session_set_param(s, "m", 10), DVS_OK);
  dvs_summary* sum = nullptr;
  ASSERT_EQ(dvs_session_summary(s, nullptr, &sum), DVS_OK);
  EXPECT_EQ(dvs_summary_size(sum), 10u);
  dvs_summary_free(sum);
  EXPECT_EQ(dvs_session_set_param(s, "m", 2.5), DVS_ERR_INVALID);
  EXPECT_EQ(dvs_session_set_param(s, "gamma", 1), DVS_ERR_INVALID);
  ASSERT_EQ(dvs_session_set_param(s, "alpha", 3), DVS_OK);
  EXPECT_EQ(dvs_session_summary(s, "qs_balanced", &sum), DVS_ERR_INVALID);
  ASSERT_EQ(dvs_session_set_param(s, "alpha", 0.5), DVS_OK);

  Text csv;
  ASSERT_EQ(dvs_session_rank(s, &csv.p), DVS_OK);
  EXPECT_EQ(csv.str().rfind("rank,id,selected_by,score,round\n", 0), 0u);

  Text sweep_report, sweep_csv;
  ASSERT_EQ(dvs_session_sweep(s, "alpha", "0:1:0.5", &sweep_report.p, &sweep_csv.p),
            DVS_OK)
      << dvs_last_error();
  const auto rows = sweep_csv.str();
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 4);
  EXPECT_EQ(dvs_session_sweep(s, "beta", "0,1", &sweep_report.p, nullptr),
            DVS_ERR_INVALID);

  Text compare;
  ASSERT_EQ(dvs_session_compare(s, &compare.p), DVS_OK);

  const auto summary = write("summary.csv", "id\ns000\ns001\n");
  Text eval;
  ASSERT_EQ(dvs_session_evaluate(s, summary.c_str(), &eval.p), DVS_OK);
  EXPECT_NE(eval.str().find("\"size\": 2"), std::string::npos);

  Text desc;
  ASSERT_EQ(dvs_session_describe(s, &desc.p), DVS_OK);
  EXPECT_NE(desc.str().find("ok\n"), std::string::npos);
}

TEST_F(CApiTest, SessionOpenErrors) {
  dvs_session* s = nullptr;
  EXPECT_EQ(dvs_session_open((dir_ / "missing.yaml").c_str(), &s), DVS_ERR_IO);
  const auto bad = write("bad.yaml", "embeddings: e.csv\nquery: {reference: q.csv}\nfoo: 1\n");
  EXPECT_EQ(dvs_session_open(bad.c_str(), &s), DVS_ERR_DATA);
  EXPECT_NE(std::string(dvs_last_error()).find("bad.yaml:3"), std::string::npos)
      << dvs_last_error();
  EXPECT_EQ(s, nullptr);
}

TEST_F(CApiTest, ValidateFiles) {
  synth();
  for (auto [kind, file] : {std::pair{"config", "run.yaml"},
                            std::pair{"embeddings", "embeddings.csv"},
                            std::pair{"labels", "labels.csv"},
                            std::pair{"partitions", "partitions.csv"}}) {
    Text t;
    EXPECT_EQ(dvs_validate_file(kind, (dir_ / file).c_str(), &t.p), DVS_OK)
        << kind << ": " << dvs_last_error();
    EXPECT_NE(t.str().find("ok"), std::string::npos);
  }
  Text t;
  EXPECT_EQ(dvs_validate_file("scores", write("s.csv", "id,score\na,7\n").c_str(), &t.p),
            DVS_ERR_DATA);
  EXPECT_EQ(dvs_validate_file("pictures", (dir_ / "run.yaml").c_str(), &t.p),
            DVS_ERR_INVALID);
}

TEST_F(CApiTest, SynthOptionsAreValidated) {
  dvs_synth_options opts;
  dvs_synth_options_default(&opts);
  opts.groups = "a:0.5:1:0.1,b:0.4:2:0.1";
  Text m;
  EXPECT_EQ(dvs_synth_write(&opts, dir_.c_str(), &m.p), DVS_ERR_INVALID);
  opts.groups = "a:0.5:1";
  EXPECT_EQ(dvs_synth_write(&opts, dir_.c_str(), &m.p), DVS_ERR_INVALID);
  opts.groups = "a:0.5:1:0.1,b:0.5:2:0.1";
  opts.binary = 1;
  ASSERT_EQ(dvs_synth_write(&opts, dir_.c_str(), &m.p), DVS_OK) << dvs_last_error();
  EXPECT_NE(m.str().find("embeddings.dvsm"), std::string::npos);
}

TEST_F(CApiTest, ReplicateWithoutData) {
  const auto bundle = write("b.yaml", "name: x\nruns: [nope.yaml]\n");
  int present = -1;
  Text report, message;
  ASSERT_EQ(dvs_replicate(bundle.c_str(), &present, &report.p, &message.p), DVS_OK);
  EXPECT_EQ(present, 0);
  EXPECT_EQ(report.p, nullptr);
  EXPECT_NE(message.str().find("nope.yaml"), std::string::npos);
}

}  // namespace
