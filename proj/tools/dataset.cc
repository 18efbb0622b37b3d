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

#include "dataset.h"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace august::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& field, std::size_t row, std::size_t column) {
  if (field.empty()) throw DatasetError(row, column, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) {
    throw DatasetError(row, column, "'" + field + "' is not a real number");
  }
  if (!std::isfinite(v)) throw DatasetError(row, column, "value is not finite");
  return v;
}

// Calls fn(row, fields) for each non-blank line.
template <typename Fn>
void for_each_row(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    fn(row, split(line));
  }
}

struct LabelSet {
  std::string first;
  std::string second;

  // True for sample X.
  bool classify(const std::string& label, std::size_t row, std::size_t column) {
    if (label.empty()) throw DatasetError(row, column, "empty group label");
    if (first.empty()) first = label;
    if (label == first) return true;
    if (second.empty()) second = label;
    if (label == second) return false;
    throw DatasetError(row, column,
                       "third group label '" + label + "' (expected exactly two)");
  }

  void require_two() const {
    if (second.empty()) {
      throw Error(ErrorCode::kParseFailure, "data must contain exactly two group labels");
    }
  }
};

}  // namespace

DatasetError::DatasetError(std::size_t row, std::size_t column, const std::string& what)
    : Error(ErrorCode::kParseFailure,
            "row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
      row_(row),
      column_(column) {}

UnivariateData parse_two_column(const std::string& text) {
  UnivariateData data;
  LabelSet labels;
  for_each_row(text, [&](std::size_t row, const std::vector<std::string>& fields) {
    if (fields.size() != 2) {
      throw DatasetError(row, std::min<std::size_t>(fields.size(), 3),
                         "expected 2 fields (value,label), found " +
                             std::to_string(fields.size()));
    }
    const double v = parse_real(fields[0], row, 1);
    (labels.classify(fields[1], row, 2) ? data.x : data.y).push_back(v);
  });
  labels.require_two();
  data.label_x = labels.first;
  data.label_y = labels.second;
  return data;
}

MultivariateData parse_multivariate(const std::string& text) {
  std::vector<std::vector<double>> xs, ys;
  LabelSet labels;
  std::size_t width = 0;
  for_each_row(text, [&](std::size_t row, const std::vector<std::string>& fields) {
    if (fields.size() < 2) {
      throw DatasetError(row, fields.size(), "expected at least one value and a label");
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw DatasetError(row, std::min(fields.size(), width),
                         "row has " + std::to_string(fields.size() - 1) +
                             " values but earlier rows have " + std::to_string(width - 1));
    }
    std::vector<double> point(width - 1);
    for (std::size_t c = 0; c + 1 < width; ++c) point[c] = parse_real(fields[c], row, c + 1);
    (labels.classify(fields.back(), row, width) ? xs : ys).push_back(std::move(point));
  });
  labels.require_two();
  auto to_matrix = [&](const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(width - 1));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c + 1 < width; ++c) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
      }
    }
    return m;
  };
  return MultivariateData{to_matrix(xs), to_matrix(ys), labels.first, labels.second};
}

std::vector<double> parse_single_column(const std::string& text) {
  std::vector<double> out;
  for_each_row(text, [&](std::size_t row, const std::vector<std::string>& fields) {
    if (fields.size() != 1) {
      throw DatasetError(row, 2, "expected a single value per row");
    }
    out.push_back(parse_real(fields[0], row, 1));
  });
  if (out.empty()) throw Error(ErrorCode::kEmptySample, "file contains no values");
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIOFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

UnivariateData load_two_column(const std::filesystem::path& path) {
  return parse_two_column(read_text(path));
}

UnivariateData load_two_files(const std::filesystem::path& x, const std::filesystem::path& y) {
  return UnivariateData{parse_single_column(read_text(x)), parse_single_column(read_text(y)),
                        x.stem().string(), y.stem().string()};
}

MultivariateData load_multivariate(const std::filesystem::path& path) {
  return parse_multivariate(read_text(path));
}

}  // namespace august::cli
