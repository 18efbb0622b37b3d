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

#ifndef AUGUST_TOOLS_DATASET_H_
#define AUGUST_TOOLS_DATASET_H_

// Headerless CSV ingestion. Univariate files hold "value,label" rows;
// multivariate files hold "v1,...,vk,label". Exactly two distinct labels
// are allowed and the first one seen names sample X. Single-column files
// (values only) are read for the two-file layout.

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "august/errors.h"

namespace august::cli {

// Parse failure pinned to a 1-based row and column.
class DatasetError : public Error {
 public:
  DatasetError(std::size_t row, std::size_t column, const std::string& what);
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

struct UnivariateData {
  std::vector<double> x;
  std::vector<double> y;
  std::string label_x;
  std::string label_y;
};

struct MultivariateData {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  std::string label_x;
  std::string label_y;
};

UnivariateData parse_two_column(const std::string& text);
MultivariateData parse_multivariate(const std::string& text);
std::vector<double> parse_single_column(const std::string& text);

// File wrappers; unreadable paths throw IOFailure.
std::string read_text(const std::filesystem::path& path);
UnivariateData load_two_column(const std::filesystem::path& path);
UnivariateData load_two_files(const std::filesystem::path& x, const std::filesystem::path& y);
MultivariateData load_multivariate(const std::filesystem::path& path);

}  // namespace august::cli

#endif  // AUGUST_TOOLS_DATASET_H_
