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

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <string_view>

namespace divsum {
namespace {

constexpr char kMagic[4] = {'D', 'V', 'S', 'M'};

// Line-oriented reader that skips '#' comments and blank lines and tracks
// line numbers for error messages.
class CsvReader {
 public:
  CsvReader(std::string path, const std::string& text)
      : path_(std::move(path)), stream_(text) {}

  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(stream_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      if (line_.empty() || line_.front() == '#') continue;
      fields.clear();
      std::string_view rest(line_);
      while (true) {
        const auto comma = rest.find(',');
        fields.push_back(rest.substr(0, comma));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw_data(path_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  std::size_t line() const { return line_no_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::istringstream stream_;
  std::string line_;
  std::size_t line_no_ = 0;
};

double parse_double(const CsvReader& reader, std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    reader.fail("not a number: '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) {
    reader.fail("non-finite value '" + std::string(text) + "'");
  }
  return v;
}

void expect_header(CsvReader& reader, std::vector<std::string_view>& fields,
                   std::initializer_list<std::string_view> names) {
  if (!reader.next(fields)) reader.fail("file is empty");
  bool ok = fields.size() == names.size();
  std::size_t i = 0;
  for (auto n : names) {
    if (!ok) break;
    ok = fields[i++] == n;
  }
  if (!ok) {
    std::string want;
    for (auto n : names) want += (want.empty() ? "" : ",") + std::string(n);
    reader.fail("expected header '" + want + "'");
  }
}

std::string checked_id(const CsvReader& reader, std::string_view id) {
  if (id.empty()) reader.fail("empty id");
  return std::string(id);
}

Dataset parse_embeddings_csv(const std::string& path, const std::string& text) {
  CsvReader reader(path, text);
  std::vector<std::string_view> fields;
  if (!reader.next(fields)) reader.fail("file is empty");
  if (fields.size() < 2 || fields[0] != "id") {
    reader.fail("expected header 'id,v0,...'");
  }
  const std::size_t dim = fields.size() - 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (fields[i + 1] != "v" + std::to_string(i)) {
      reader.fail("header column " + std::to_string(i + 1) +
                  " should be 'v" + std::to_string(i) + "'");
    }
  }
  std::vector<FeatureVector> items;
  std::set<std::string> seen;
  while (reader.next(fields)) {
    if (fields.size() != dim + 1) {
      reader.fail("expected " + std::to_string(dim) + " values, found " +
                  std::to_string(fields.size() - 1));
    }
    auto id = checked_id(reader, fields[0]);
    if (!seen.insert(id).second) reader.fail("duplicate id '" + id + "'");
    std::vector<double> values(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      values[i] = parse_double(reader, fields[i + 1]);
    }
    try {
      items.emplace_back(std::move(id), std::move(values));
    } catch (const Error& e) {
      reader.fail(e.what());
    }
  }
  if (items.empty()) reader.fail("no embedding rows");
  return Dataset(std::move(items));
}

class ByteReader {
 public:
  ByteReader(const std::string& path, const std::string& bytes)
      : path_(path), bytes_(bytes) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
      v = (v << 8) | static_cast<unsigned char>(bytes_[pos_ + i]);
    }
    pos_ += 4;
    return v;
  }

  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
      v = (v << 8) | static_cast<unsigned char>(bytes_[pos_ + i]);
    }
    pos_ += 8;
    return std::bit_cast<double>(v);
  }

  std::string str(std::size_t n) {
    need(n);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool done() const { return pos_ == bytes_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw_data(path_ + ": byte " + std::to_string(pos_) + ": " + what);
  }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) fail("unexpected end of file");
  }

  const std::string& path_;
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

Dataset parse_embeddings_binary(const std::string& path,
                                const std::string& bytes) {
  ByteReader in(path, bytes);
  if (in.str(4) != std::string_view(kMagic, 4)) in.fail("bad magic");
  const std::uint32_t count = in.u32();
  const std::uint32_t dim = in.u32();
  if (count == 0) in.fail("no embedding rows");
  if (dim == 0) in.fail("zero dimension");
  std::vector<std::string> ids;
  ids.reserve(count);
  std::set<std::string> seen;
  for (std::uint32_t i = 0; i < count; ++i) {
    auto id = in.str(in.u32());
    if (id.empty()) in.fail("empty id");
    if (!seen.insert(id).second) in.fail("duplicate id '" + id + "'");
    ids.push_back(std::move(id));
  }
  std::vector<FeatureVector> items;
  items.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::vector<double> values(dim);
    for (auto& v : values) {
      v = in.f64();
      if (!std::isfinite(v)) in.fail("non-finite value for '" + ids[i] + "'");
    }
    try {
      items.emplace_back(std::move(ids[i]), std::move(values));
    } catch (const Error& e) {
      in.fail(e.what());
    }
  }
  if (!in.done()) in.fail("trailing bytes");
  return Dataset(std::move(items));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double d) {
  const auto v = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

bool is_binary(const std::string& bytes) {
  return bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_io("cannot write '" + path + "'");
  out << contents;
  if (!out) throw_io("write failed for '" + path + "'");
}

Dataset load_embeddings(const std::string& path) {
  const auto bytes = read_file(path);
  if (is_binary(bytes)) return parse_embeddings_binary(path, bytes);
  return parse_embeddings_csv(path, bytes);
}

void save_embeddings(const Dataset& dataset, const std::string& path,
                     EmbeddingFormat format,
                     const std::vector<std::string>& comments) {
  std::string out;
  if (format == EmbeddingFormat::kBinary) {
    out.append(kMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(dataset.size()));
    put_u32(out, static_cast<std::uint32_t>(dataset.dim()));
    for (const auto& item : dataset.items()) {
      put_u32(out, static_cast<std::uint32_t>(item.id().size()));
      out += item.id();
    }
    for (const auto& item : dataset.items()) {
      for (double v : item.values()) put_f64(out, v);
    }
  } else {
    for (const auto& c : comments) out += "# " + c + "\n";
    out += "id";
    for (std::size_t i = 0; i < dataset.dim(); ++i) {
      out += ",v" + std::to_string(i);
    }
    out += '\n';
    for (const auto& item : dataset.items()) {
      out += item.id();
      for (double v : item.values()) out += "," + format_double(v);
      out += '\n';
    }
  }
  write_file(path, out);
}

EvaluationLabels load_labels(const std::string& path) {
  CsvReader reader(path, read_file(path));
  std::vector<std::string_view> fields;
  expect_header(reader, fields, {"id", "attribute", "value"});
  EvaluationLabels labels;
  std::size_t rows = 0;
  while (reader.next(fields)) {
    if (fields.size() != 3) reader.fail("expected id,attribute,value");
    const auto id = checked_id(reader, fields[0]);
    if (fields[1].empty() || fields[2].empty()) {
      reader.fail("empty attribute or value");
    }
    if (labels.has(id, fields[1])) {
      reader.fail("duplicate label '" + std::string(fields[1]) + "' for '" +
                  id + "'");
    }
    labels.set(id, std::string(fields[1]), std::string(fields[2]));
    ++rows;
  }
  if (rows == 0) reader.fail("no label rows");
  return labels;
}

void save_labels(const EvaluationLabels& labels, const Dataset& dataset,
                 const std::vector<std::string>& attributes,
                 const std::string& path) {
  std::string out = "id,attribute,value\n";
  for (const auto& item : dataset.items()) {
    for (const auto& attr : attributes) {
      if (!labels.has(item.id(), attr)) continue;
      out += item.id() + "," + attr + "," +
             std::string(labels.get(item.id(), attr)) + "\n";
    }
  }
  write_file(path, out);
}

DiversityControlSet load_control_set(const std::string& path,
                                     const Dataset& pool) {
  const auto bytes = read_file(path);
  if (is_binary(bytes)) {
    return DiversityControlSet(parse_embeddings_binary(path, bytes).items());
  }
  CsvReader reader(path, bytes);
  std::vector<std::string_view> fields;
  if (!reader.next(fields)) reader.fail("file is empty");
  if (fields.size() > 1) {
    return DiversityControlSet(parse_embeddings_csv(path, bytes).items());
  }
  if (fields[0] != "id") reader.fail("expected header 'id'");
  std::vector<FeatureVector> items;
  std::set<std::string> seen;
  while (reader.next(fields)) {
    if (fields.size() != 1) reader.fail("expected a single id per line");
    const auto id = checked_id(reader, fields[0]);
    if (!seen.insert(id).second) reader.fail("duplicate id '" + id + "'");
    const auto pos = pool.find(id);
    if (!pos) reader.fail("control id '" + id + "' not found in embeddings");
    items.push_back(pool[*pos]);
  }
  if (items.empty()) reader.fail("no control ids");
  return DiversityControlSet(std::move(items));
}

ExternalScores load_external_scores(const std::string& path) {
  CsvReader reader(path, read_file(path));
  std::vector<std::string_view> fields;
  expect_header(reader, fields, {"id", "score"});
  std::unordered_map<std::string, double> scores;
  while (reader.next(fields)) {
    if (fields.size() != 2) reader.fail("expected id,score");
    const auto id = checked_id(reader, fields[0]);
    const double s = parse_double(reader, fields[1]);
    if (s < 0.0 || s > 1.0) reader.fail("score outside [0, 1]");
    if (!scores.emplace(id, s).second) reader.fail("duplicate id '" + id + "'");
  }
  if (scores.empty()) reader.fail("no score rows");
  return make_external_scores(std::move(scores));
}

PartitionLabels load_partition_labels(const std::string& path) {
  CsvReader reader(path, read_file(path));
  std::vector<std::string_view> fields;
  expect_header(reader, fields, {"id", "label"});
  PartitionLabels out;
  while (reader.next(fields)) {
    if (fields.size() != 2) reader.fail("expected id,label");
    const auto id = checked_id(reader, fields[0]);
    if (fields[1].empty()) reader.fail("empty label");
    if (!out.group_of.emplace(id, std::string(fields[1])).second) {
      reader.fail("duplicate id '" + id + "'");
    }
  }
  if (out.group_of.empty()) reader.fail("no partition rows");
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  return sha256_hex(read_file(path));
}

}  // namespace divsum
