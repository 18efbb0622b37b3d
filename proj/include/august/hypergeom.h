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

#ifndef AUGUST_HYPERGEOM_H_
#define AUGUST_HYPERGEOM_H_

// Hypergeometric cell probabilities over dyadic cells (the "augmented CDF"),
// plus a bootstrap estimator and an exhaustive-subsample oracle for it.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace august {

// Sentinel returned by log_binomial for C(n, k) = 0.
inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// Depth d and subsample exponent q, giving 2^d cells and a conceptual
// subsample of r = 2^q - 1 reference points. Requires 1 <= d <= 20 and
// d <= q <= 30.
class SubsampleConfig {
 public:
  // q = d + 1, so r = 2^(d+1) - 1.
  static SubsampleConfig for_depth(int depth);
  static SubsampleConfig with_exponent(int depth, int exponent);

  int depth() const { return depth_; }
  int exponent() const { return exponent_; }
  std::int64_t subsample_size() const { return (std::int64_t{1} << exponent_) - 1; }
  std::size_t cell_count() const { return std::size_t{1} << depth_; }
  // Number of attainable success counts that fall in each cell.
  std::int64_t counts_per_cell() const { return std::int64_t{1} << (exponent_ - depth_); }

  bool operator==(const SubsampleConfig&) const = default;

 private:
  SubsampleConfig(int depth, int exponent) : depth_(depth), exponent_(exponent) {}

  int depth_;
  int exponent_;
};

// Length-2^d probability vector over dyadic cells. Construction checks that
// entries lie in [0, 1] and sum to one (to 1e-9; callers that need the
// tighter 1e-12 guarantee assert it themselves).
class CellProbabilities {
 public:
  CellProbabilities(std::vector<double> probs, int depth);

  int depth() const { return depth_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }
  double sum() const;

  bool operator==(const CellProbabilities&) const = default;

 private:
  std::vector<double> probs_;
  int depth_;
};

// ln C(n, k). Returns kLogZero when k < 0 or k > n. Exact summation of
// log-ratios is used when min(k, n - k) <= 1024, Stirling's series with
// separate remainders otherwise.
double log_binomial(std::int64_t n, std::int64_t k);

// Writes the cell probabilities for a reference sample of size `population`
// of which `successes` points are <= x. `out` must have cfg.cell_count()
// entries. This is the count-indexed kernel shared by every algorithm, so
// results depend on the sample only through (successes, population).
void hypergeometric_cells(std::int64_t successes, std::int64_t population,
                          const SubsampleConfig& cfg, std::span<double> out);

CellProbabilities cell_probabilities_for_count(std::int64_t successes,
                                               std::int64_t population,
                                               const SubsampleConfig& cfg);

// #{i : reference[i] <= x} by linear scan.
std::int64_t count_at_or_below(double x, std::span<const double> reference);

// Exact augmented CDF of x relative to `reference`.
// Throws SampleTooSmall when reference.size() < r.
CellProbabilities augmented_cdf(double x, std::span<const double> reference,
                                const SubsampleConfig& cfg);

// Monte-Carlo estimate: `replicates` subsamples of size r drawn without
// replacement, each binned by the cell holding its ECDF value at x (the top
// cell is closed at 1). Deterministic given seed.
CellProbabilities bootstrap_augmented_cdf(double x,
                                          std::span<const double> reference,
                                          const SubsampleConfig& cfg,
                                          std::int64_t replicates,
                                          std::uint64_t seed);

inline constexpr std::uint64_t kDefaultMaxCombinations = 10'000'000;

// Averages the cell indicator over every r-subset of `reference`, visiting
// combinations lazily in lexicographic order. Throws TooManyCombinations
// when C(n, r) exceeds max_combinations.
CellProbabilities exhaustive_subsample_cdf(
    double x, std::span<const double> reference, const SubsampleConfig& cfg,
    std::uint64_t max_combinations = kDefaultMaxCombinations);

}  // namespace august

#endif  // AUGUST_HYPERGEOM_H_
