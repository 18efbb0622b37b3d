// Copyright 2026 The AUGUST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "august/errors.h"
#include "august/inference.h"

namespace august {
namespace {

constexpr std::array<char, 8> kMagic = {'A', 'U', 'G', 'N', 'U', 'L', 'L', '\0'};

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto bits = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(bits & 0xFF));
    bits = static_cast<U>(bits >> 8);
  }
}

class Reader {
 public:
  explicit Reader(const std::string& data) : data_(data) {}

  template <typename T>
  T get() {
    using U = std::make_unsigned_t<T>;
    need(sizeof(T));
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      bits |= static_cast<U>(static_cast<U>(static_cast<unsigned char>(data_[pos_ + i]))
                             << (8 * i));
    }
    pos_ += sizeof(T);
    return static_cast<T>(bits);
  }

  std::string bytes(std::size_t count) {
    need(count);
    std::string out = data_.substr(pos_, count);
    pos_ += count;
    return out;
  }

  bool at_end() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t count) {
    if (data_.size() - pos_ < count) {
      throw Error(ErrorCode::kCorruptFile, "null-table file is truncated");
    }
  }

  const std::string& data_;
  std::size_t pos_ = 0;
};

std::string encode(const NullTable& table) {
  std::string out(kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(out, kNullTableFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.depth));
  put_le<std::int64_t>(out, table.m);
  put_le<std::int64_t>(out, table.n);
  put_le<std::int64_t>(out, table.sims);
  put_le<std::uint64_t>(out, table.seed);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.generator_tag.size()));
  out += table.generator_tag;
  for (double v : table.stats) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIOFailure, "cannot open " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIOFailure, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIOFailure, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace

std::string null_table_filename(std::int64_t m, std::int64_t n, int depth,
                                std::int64_t sims, std::uint64_t seed,
                                const std::string& generator) {
  std::ostringstream name;
  name << "null_m" << m << "_n" << n << "_d" << depth << "_B" << sims << "_s"
       << seed << "_" << generator << ".bin";
  return name.str();
}

std::string null_table_header_json(const NullTable& table) {
  nlohmann::ordered_json header;
  header["format_version"] = kNullTableFormatVersion;
  header["m"] = table.m;
  header["n"] = table.n;
  header["depth"] = table.depth;
  header["sims"] = table.sims;
  header["seed"] = table.seed;
  header["generator_tag"] = table.generator_tag;
  return header.dump(2) + "\n";
}

void write_null_table(const NullTable& table, const std::filesystem::path& path) {
  if (static_cast<std::int64_t>(table.stats.size()) != table.sims) {
    throw Error(ErrorCode::kInvalidArgument, "table length differs from B");
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIOFailure, "cannot create " + path.parent_path().string());
  }
  write_atomically(path, encode(table));
  std::filesystem::path sidecar = path;
  sidecar += ".json";
  write_atomically(sidecar, null_table_header_json(table));
}

NullTable read_null_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIOFailure, "cannot open " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader reader(data);
  if (reader.bytes(kMagic.size()) != std::string(kMagic.begin(), kMagic.end())) {
    throw Error(ErrorCode::kCorruptFile, path.string() + " is not a null-table file");
  }
  const auto version = reader.get<std::uint32_t>();
  if (version != kNullTableFormatVersion) {
    throw Error(ErrorCode::kCorruptFile, "unsupported null-table format version " +
                                             std::to_string(version));
  }
  NullTable table;
  table.depth = static_cast<int>(reader.get<std::uint32_t>());
  table.m = reader.get<std::int64_t>();
  table.n = reader.get<std::int64_t>();
  table.sims = reader.get<std::int64_t>();
  table.seed = reader.get<std::uint64_t>();
  const auto tag_length = reader.get<std::uint32_t>();
  table.generator_tag = reader.bytes(tag_length);
  if (table.sims < 0) throw Error(ErrorCode::kCorruptFile, "negative table length");
  table.stats.resize(static_cast<std::size_t>(table.sims));
  for (double& v : table.stats) v = std::bit_cast<double>(reader.get<std::uint64_t>());
  if (!reader.at_end()) throw Error(ErrorCode::kCorruptFile, "trailing bytes in null-table file");
  if (!std::is_sorted(table.stats.begin(), table.stats.end())) {
    throw Error(ErrorCode::kCorruptFile, "null-table statistics are not sorted");
  }
  return table;
}

CachedTable load_or_build_null_table(const std::filesystem::path& dir,
                                     std::int64_t m, std::int64_t n, int depth,
                                     std::int64_t sims, std::uint64_t seed,
                                     const std::string& generator) {
  const std::filesystem::path path =
      dir / null_table_filename(m, n, depth, sims, seed, generator);
  if (std::filesystem::exists(path)) {
    NullTable table = read_null_table(path);
    if (table.m == m && table.n == n && table.depth == depth && table.sims == sims &&
        table.seed == seed && table.generator_tag == generator) {
      return CachedTable{std::move(table), path, true};
    }
  }
  NullTable table = build_null_table(m, n, depth, sims, seed, generator);
  write_null_table(table, path);
  return CachedTable{std::move(table), path, false};
}

}  // namespace august
