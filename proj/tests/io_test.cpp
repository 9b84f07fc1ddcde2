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


#include "divsum/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "test_support.hpp"

namespace divsum {
namespace {

using testing::TempDir;

// Runs `fn`, expecting a data error whose message contains every fragment.
void expect_data_error(const std::function<void()>& fn,
                       std::initializer_list<const char*> fragments) {
  try {
    fn();
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kData) << e.what();
    for (const char* f : fragments) {
      EXPECT_NE(std::string(e.what()).find(f), std::string::npos)
          << "'" << f << "' not in: " << e.what();
    }
  }
}

void expect_same(const Dataset& a, const Dataset& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id(), b[i].id());
    ASSERT_EQ(a[i].dim(), b[i].dim());
    for (std::size_t j = 0; j < a[i].dim(); ++j) {
      const double x = a[i].values()[j], y = b[i].values()[j];
      EXPECT_EQ(std::memcmp(&x, &y, sizeof x), 0) << a[i].id() << "[" << j << "]";
    }
  }
}

Dataset awkward_values() {
  auto ds = testing::random_dataset(20, 7, 13);
  std::vector<FeatureVector> items(ds.items());
  items.emplace_back("tiny", std::vector<double>{5e-324, -1e-300, 1.0 / 3.0,
                                                 0.1, -0.0, 1e300, 2.0});
  return Dataset(std::move(items));
}

TEST(Embeddings, CsvRoundTripIsLossless) {
  TempDir dir;
  const auto ds = awkward_values();
  save_embeddings(ds, dir.file("e.csv"), EmbeddingFormat::kCsv, {"made by a test"});
  EXPECT_EQ(testing::slurp(dir.file("e.csv")).rfind("# made by a test\n", 0), 0u);
  expect_same(ds, load_embeddings(dir.file("e.csv")));
}

TEST(Embeddings, BinaryRoundTripIsLossless) {
  TempDir dir;
  const auto ds = awkward_values();
  save_embeddings(ds, dir.file("e.dvsm"), EmbeddingFormat::kBinary);
  EXPECT_EQ(testing::slurp(dir.file("e.dvsm")).substr(0, 4), "DVSM");
  expect_same(ds, load_embeddings(dir.file("e.dvsm")));
}

TEST(Embeddings, ExtractorCommentHeader) {
  TempDir dir;
  const auto p = dir.write("x.csv",
                           "# backbone: vgg16\n"
                           "# weights_sha256: 0f3c\n"
                           "# pca_dim: 2\n"
                           "id,v0,v1\n"
                           "cats/a.jpg,0.6,0.8\n"
                           "cats/b.jpg,-1e-3,1\n");
  const auto ds = load_embeddings(p);
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].id(), "cats/a.jpg");
  EXPECT_EQ(ds.dim(), 2u);
  EXPECT_DOUBLE_EQ(ds[1].values()[0], -1e-3);
}

TEST(Embeddings, RejectionSuite) {
  TempDir dir;
  expect_data_error([&] { load_embeddings(dir.write("a.csv", "id,v0\nx,1\nx,2\n")); },
                    {"a.csv:3:", "duplicate id 'x'"});
  expect_data_error([&] { load_embeddings(dir.write("b.csv", "id,v0,v1\nx,1,nan\n")); },
                    {"b.csv:2:"});
  expect_data_error([&] { load_embeddings(dir.write("c.csv", "id,v0,v1\nx,1,2\ny,3\n")); },
                    {"c.csv:3:", "expected 2 values"});
  expect_data_error([&] { load_embeddings(dir.write("d.csv", "")); }, {"empty"});
  expect_data_error([&] { load_embeddings(dir.write("e.csv", "name,a\nx,1\n")); },
                    {"e.csv:1:"});
  expect_data_error([&] { load_embeddings(dir.write("f.csv", "id,v0\nx,abc\n")); },
                    {"not a number"});
  expect_data_error([&] { load_embeddings(dir.write("g.csv", "id,v0\n")); },
                    {"no embedding rows"});
  expect_data_error([&] { load_embeddings(dir.write("h.csv", "id,v0\nx,inf\n")); },
                    {"h.csv:2:"});
  expect_data_error([&] { load_embeddings(dir.write("z.csv", "id,v0,v1\nx,0,0\n")); },
                    {"z.csv:2:"});
}

TEST(Embeddings, MissingFileIsIoError) {
  try {
    load_embeddings("/nonexistent/definitely/not/here.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Embeddings, BinaryRejectionSuite) {
  TempDir dir;
  const auto ds = testing::random_dataset(3, 2, 1);
  save_embeddings(ds, dir.file("ok.dvsm"), EmbeddingFormat::kBinary);
  const auto good = testing::slurp(dir.file("ok.dvsm"));

  expect_data_error([&] { load_embeddings(dir.write("t.dvsm", good.substr(0, good.size() - 3))); },
                    {"unexpected end of file"});
  expect_data_error([&] { load_embeddings(dir.write("x.dvsm", good + "!")); },
                    {"trailing bytes"});
  auto nan = good;
  const double q = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan.data() + nan.size() - sizeof q, &q, sizeof q);
  expect_data_error([&] { load_embeddings(dir.write("n.dvsm", nan)); }, {"non-finite"});
  auto dup = good;
  // ids are "x000", "x001", "x002"; rename the second to the first.
  dup.replace(dup.find("x001"), 4, "x000");
  expect_data_error([&] { load_embeddings(dir.write("d.dvsm", dup)); },
                    {"duplicate id 'x000'"});
}

TEST(Labels, RoundTripAndRejections) {
  TempDir dir;
  const Dataset ds({FeatureVector("a", {1}), FeatureVector("b", {2})});
  EvaluationLabels l;
  l.set("a", "gender", "female");
  l.set("b", "gender", "male");
  l.set("b", "skintone", "dark");
  save_labels(l, ds, {"gender", "skintone"}, dir.file("l.csv"));
  const auto back = load_labels(dir.file("l.csv"));
  EXPECT_EQ(back.get("a", "gender"), "female");
  EXPECT_EQ(back.get("b", "skintone"), "dark");
  EXPECT_EQ(back.get("a", "skintone"), EvaluationLabels::kUnknown);

  expect_data_error(
      [&] { load_labels(dir.write("d.csv", "id,attribute,value\na,g,x\na,g,y\n")); },
      {"d.csv:3:", "duplicate"});
  expect_data_error([&] { load_labels(dir.write("h.csv", "id,value\na,x\n")); },
                    {"h.csv:1:"});
  expect_data_error([&] { load_labels(dir.write("e.csv", "")); }, {"empty"});
}

TEST(ControlSet, IdListResolvesAgainstPool) {
  TempDir dir;
  const auto pool = testing::random_dataset(4, 3, 2);
  const auto ctl = load_control_set(dir.write("c.csv", "id\nx002\nx000\n"), pool);
  ASSERT_EQ(ctl.size(), 2u);
  EXPECT_EQ(ctl[0].id(), "x002");
  expect_data_error([&] { load_control_set(dir.write("m.csv", "id\nx009\n"), pool); },
                    {"m.csv:2:", "x009"});
  expect_data_error([&] { load_control_set(dir.write("e.csv", ""), pool); }, {"empty"});
}

TEST(ControlSet, EmbeddingFile) {
  TempDir dir;
  const auto pool = testing::random_dataset(4, 2, 2);
  const auto ctl = load_control_set(dir.write("c.csv", "id,v0,v1\nf,1,0\ng,0,1\n"), pool);
  EXPECT_EQ(ctl.size(), 2u);
  EXPECT_EQ(ctl[1].id(), "g");
}

TEST(ExternalScores, ParsesAndValidates) {
  TempDir dir;
  const auto s = load_external_scores(dir.write("s.csv", "id,score\na,0.9\nb,0\n"));
  EXPECT_DOUBLE_EQ(s.scores.at("a"), 0.9);
  expect_data_error([&] { load_external_scores(dir.write("r.csv", "id,score\na,1.5\n")); },
                    {"r.csv:2:", "outside"});
  expect_data_error([&] { load_external_scores(dir.write("d.csv", "id,score\na,1\na,0\n")); },
                    {"duplicate"});
  expect_data_error([&] { load_external_scores(dir.write("e.csv", "")); }, {"empty"});
}

TEST(PartitionLabels, ParsesAndValidates) {
  TempDir dir;
  const auto p = load_partition_labels(dir.write("p.csv", "id,label\na,m\nb,f\n"));
  EXPECT_EQ(p.group_of.at("b"), "f");
  expect_data_error([&] { load_partition_labels(dir.write("d.csv", "id,label\na,m\na,f\n")); },
                    {"duplicate id 'a'"});
  expect_data_error([&] { load_partition_labels(dir.write("e.csv", "")); }, {"empty"});
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  TempDir dir;
  EXPECT_EQ(sha256_file(dir.write("abc.txt", "abc")), sha256_hex("abc"));
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  const double third = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(third)), third);
}

}  // namespace
}  // namespace divsum
