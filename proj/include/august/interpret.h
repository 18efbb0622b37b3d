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

#ifndef AUGUST_INTERPRET_H_
#define AUGUST_INTERPRET_H_

// Explanation artifacts for a test result: symmetry statistics ranked by
// magnitude with their Hadamard row patterns, and quantile regions of the
// reference sample shaded where the other sample is in excess.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "august/august.h"

namespace august {

// The reference sample defines the regions. With reference Y the relevant
// vector is s_x (X viewed through Y's quantiles), and vice versa.
enum class Reference { kX, kY };

std::string_view reference_name(Reference ref);  // "X" or "Y"

enum class SampleKind { kUnivariate, kMahalanobis };

struct RankedSymmetry {
  int rank;                      // 1-based
  int row_index;                 // 1-based Sylvester row, always >= 2
  std::vector<int> row_pattern;  // +-1 entries of that row
  double value;
};

std::vector<RankedSymmetry> rank_symmetries(const SymmetryVector& stats);
std::vector<RankedSymmetry> rank_symmetries(const AugustResult& result,
                                            Reference reference = Reference::kY);

// Short description of a Hadamard row. Low depths have fixed vocabulary;
// other rows are named by their sign-change count.
std::string row_label(int depth, int row_index,
                      SampleKind kind = SampleKind::kUnivariate);

struct Interval {
  double lo;
  double hi;
  bool operator==(const Interval&) const = default;
};

struct RegionReport {
  std::string reference_label;
  std::vector<Interval> intervals;
  std::vector<bool> shaded;
  int row_index;
  std::vector<int> row_pattern;
  double statistic_value;
  int rank;

  bool operator==(const RegionReport&) const = default;
};

// 2^d consecutive groups of the sorted sample. Group sizes differ by at most
// one with the larger groups leftmost; boundaries sit at midpoints between
// neighbouring order statistics, and the outer ends are min and max.
// Throws SampleTooSmall when the sample has fewer than 2^d points.
std::vector<Interval> quantile_intervals(std::span<const double> reference, int depth);

// shaded[i] = pattern[i] * sign(value) > 0. A zero value shades nothing.
std::vector<bool> shading(std::span<const int> pattern, double value);

// Reports for the top_k ranked rows (clamped to 2^d - 1). The samples must
// be the ones the result was computed from (for multivariate results, the
// Mahalanobis distances of the chosen branch).
std::vector<RegionReport> region_report(const AugustResult& result,
                                        std::span<const double> x,
                                        std::span<const double> y,
                                        Reference reference, int top_k);

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending edges
  std::vector<std::int64_t> counts;
  bool operator==(const Histogram&) const = default;
};

// Equal-width bins over [min, max], last bin closed.
Histogram histogram(std::span<const double> values, int bins);

inline constexpr int kPlotSchemaVersion = 1;

struct PlotData {
  int schema_version = kPlotSchemaVersion;
  std::string reference_label;
  Histogram histogram;
  std::vector<RegionReport> reports;
  bool operator==(const PlotData&) const = default;
};

PlotData make_plot_data(const std::vector<RegionReport>& reports,
                        std::span<const double> reference_sample,
                        std::string reference_label, int histogram_bins);

// Numbers are written with 17 significant digits, so parsing restores the
// exact doubles. Output bytes depend only on the input.
std::string plot_data_json(const PlotData& data);
PlotData parse_plot_data(const std::string& text);  // throws ParseFailure

// Throws IOFailure.
void emit_plot_data(const PlotData& data, const std::filesystem::path& path);
PlotData read_plot_data(const std::filesystem::path& path);

}  // namespace august

#endif  // AUGUST_INTERPRET_H_
