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

#include "august/hypergeom.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "august/errors.h"

namespace august {
namespace {

// Largest subsample size handled by the direct falling-factorial product.
// Beyond it the normalizer underflows and the log-gamma path takes over.
constexpr std::int64_t kMaxProductSubsample = 127;

void check_population(std::int64_t successes, std::int64_t population,
                      const SubsampleConfig& cfg) {
  if (population < cfg.subsample_size()) {
    throw Error(ErrorCode::kSampleTooSmall,
                "reference sample has " + std::to_string(population) +
                    " points; depth " + std::to_string(cfg.depth()) +
                    " needs at least " + std::to_string(cfg.subsample_size()));
  }
  if (successes < 0 || successes > population) {
    throw Error(ErrorCode::kInvalidArgument,
                "success count outside [0, population]");
  }
}

// pmf(j) = C(r, j) [K]_j [N-K]_(r-j) / [N]_r where [a]_j is the falling
// factorial. Each falling factorial is accumulated as a product of ratios
// a_i / N <= 1, so no intermediate overflows and relative error stays
// O(r * eps).
void hypergeometric_pmf_product(std::int64_t successes, std::int64_t population,
                                std::int64_t r, std::span<double> pmf) {
  std::array<double, kMaxProductSubsample + 1> succ{};
  std::array<double, kMaxProductSubsample + 1> fail{};
  std::array<double, kMaxProductSubsample + 1> choose{};
  const double total = static_cast<double>(population);
  const std::int64_t failures = population - successes;

  succ[0] = 1.0;
  fail[0] = 1.0;
  double norm = 1.0;
  for (std::int64_t j = 1; j <= r; ++j) {
    const std::int64_t a = std::max<std::int64_t>(successes - (j - 1), 0);
    const std::int64_t b = std::max<std::int64_t>(failures - (j - 1), 0);
    succ[j] = succ[j - 1] * (static_cast<double>(a) / total);
    fail[j] = fail[j - 1] * (static_cast<double>(b) / total);
    norm = norm * (static_cast<double>(population - (j - 1)) / total);
  }
  // C(r, j) mirrored so that both ends are exact.
  choose[0] = 1.0;
  for (std::int64_t j = 1; j <= r / 2; ++j) {
    choose[j] = choose[j - 1] * static_cast<double>(r - j + 1) /
                static_cast<double>(j);
  }
  for (std::int64_t j = r / 2 + 1; j <= r; ++j) choose[j] = choose[r - j];

  for (std::int64_t j = 0; j <= r; ++j) {
    pmf[j] = choose[j] * succ[j] * fail[r - j] / norm;
  }
}

void hypergeometric_pmf_log(std::int64_t successes, std::int64_t population,
                            std::int64_t r, std::span<double> pmf) {
  const double log_norm = log_binomial(population, r);
  for (std::int64_t j = 0; j <= r; ++j) {
    const double term = log_binomial(successes, j) +
                        log_binomial(population - successes, r - j) - log_norm;
    pmf[j] = std::exp(term);
  }
}

// Beyond this many terms log_binomial switches to the Stirling form.
constexpr std::int64_t kMaxSummedLogBinomial = 1024;

// ln m! - [(m + 1/2) ln m - m + ln(2 pi)/2], asymptotic series. Only called
// with m > kMaxSummedLogBinomial, where four terms reach double precision.
double stirling_remainder(double m) {
  const double inv = 1.0 / m;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
}

}  // namespace

SubsampleConfig SubsampleConfig::for_depth(int depth) {
  return with_exponent(depth, depth + 1);
}

SubsampleConfig SubsampleConfig::with_exponent(int depth, int exponent) {
  if (depth < 1 || depth > 20) {
    throw Error(ErrorCode::kDepthOutOfRange,
                "depth must lie in [1, 20], got " + std::to_string(depth));
  }
  if (exponent < depth || exponent > 30) {
    throw Error(ErrorCode::kInvalidArgument,
                "subsample exponent q must satisfy d <= q <= 30");
  }
  return SubsampleConfig(depth, exponent);
}

CellProbabilities::CellProbabilities(std::vector<double> probs, int depth)
    : probs_(std::move(probs)), depth_(depth) {
  if (depth < 1 || depth > 20) {
    throw Error(ErrorCode::kDepthOutOfRange, "cell depth out of range");
  }
  if (probs_.size() != (std::size_t{1} << depth)) {
    throw Error(ErrorCode::kInvalidCellProbabilities,
                "cell vector length must be 2^depth");
  }
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0 + 1e-12)) {
      throw Error(ErrorCode::kInvalidCellProbabilities,
                  "cell probability outside [0, 1]");
    }
  }
  if (std::abs(sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidCellProbabilities,
                "cell probabilities do not sum to one");
  }
}

double CellProbabilities::sum() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) {
    throw Error(ErrorCode::kInvalidArgument, "log_binomial requires n >= 0");
  }
  if (k < 0 || k > n) return kLogZero;
  const std::int64_t small = std::min(k, n - k);
  if (small <= kMaxSummedLogBinomial) {
    double acc = 0.0;
    for (std::int64_t i = 1; i <= small; ++i) {
      acc += std::log(static_cast<double>(n - small + i) /
                      static_cast<double>(i));
    }
    return acc;
  }
  // Stirling form with the remainders kept separately; the entropy term is
  // written with log1p so that nothing cancels catastrophically.
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(small);
  const double rest = nn - kk;
  const double entropy = kk * std::log(nn / kk) - rest * std::log1p(-kk / nn);
  return entropy + 0.5 * std::log(nn / (kk * rest)) - 0.5 * std::log(2.0 * std::numbers::pi) +
         stirling_remainder(nn) - stirling_remainder(kk) - stirling_remainder(rest);
}

void hypergeometric_cells(std::int64_t successes, std::int64_t population,
                          const SubsampleConfig& cfg, std::span<double> out) {
  check_population(successes, population, cfg);
  if (out.size() != cfg.cell_count()) {
    throw Error(ErrorCode::kInvalidArgument, "output span has wrong length");
  }
  const std::int64_t r = cfg.subsample_size();
  const std::int64_t per_cell = cfg.counts_per_cell();

  if (r <= kMaxProductSubsample) {
    std::array<double, kMaxProductSubsample + 1> pmf{};
    hypergeometric_pmf_product(successes, population, r, pmf);
    for (std::size_t c = 0; c < out.size(); ++c) {
      double acc = 0.0;
      const std::int64_t lo = static_cast<std::int64_t>(c) * per_cell;
      for (std::int64_t j = lo; j < lo + per_cell; ++j) acc += pmf[j];
      out[c] = acc;
    }
    return;
  }
  std::vector<double> pmf(static_cast<std::size_t>(r + 1));
  hypergeometric_pmf_log(successes, population, r, pmf);
  for (std::size_t c = 0; c < out.size(); ++c) {
    double acc = 0.0;
    const std::int64_t lo = static_cast<std::int64_t>(c) * per_cell;
    for (std::int64_t j = lo; j < lo + per_cell; ++j) acc += pmf[j];
    out[c] = acc;
  }
}

CellProbabilities cell_probabilities_for_count(std::int64_t successes,
                                               std::int64_t population,
                                               const SubsampleConfig& cfg) {
  std::vector<double> probs(cfg.cell_count());
  hypergeometric_cells(successes, population, cfg, probs);
  return CellProbabilities(std::move(probs), cfg.depth());
}

std::int64_t count_at_or_below(double x, std::span<const double> reference) {
  std::int64_t count = 0;
  for (double v : reference) count += (v <= x) ? 1 : 0;
  return count;
}

CellProbabilities augmented_cdf(double x, std::span<const double> reference,
                                const SubsampleConfig& cfg) {
  const auto n = static_cast<std::int64_t>(reference.size());
  check_population(0, n, cfg);
  return cell_probabilities_for_count(count_at_or_below(x, reference), n, cfg);
}

CellProbabilities bootstrap_augmented_cdf(double x,
                                          std::span<const double> reference,
                                          const SubsampleConfig& cfg,
                                          std::int64_t replicates,
                                          std::uint64_t seed) {
  const auto n = static_cast<std::int64_t>(reference.size());
  check_population(0, n, cfg);
  if (replicates < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one replicate");
  }
  const std::int64_t r = cfg.subsample_size();
  const int shift = cfg.exponent() - cfg.depth();

  std::vector<double> pool(reference.begin(), reference.end());
  std::vector<std::int64_t> tally(cfg.cell_count(), 0);
  std::mt19937_64 rng(seed);
  for (std::int64_t rep = 0; rep < replicates; ++rep) {
    // Partial Fisher-Yates: pool[0, r) becomes a uniform r-subset.
    std::int64_t below = 0;
    for (std::int64_t i = 0; i < r; ++i) {
      std::uniform_int_distribution<std::int64_t> pick(i, n - 1);
      std::swap(pool[i], pool[pick(rng)]);
      below += (pool[i] <= x) ? 1 : 0;
    }
    ++tally[static_cast<std::size_t>(below >> shift)];
  }
  std::vector<double> probs(cfg.cell_count());
  for (std::size_t c = 0; c < probs.size(); ++c) {
    probs[c] = static_cast<double>(tally[c]) / static_cast<double>(replicates);
  }
  return CellProbabilities(std::move(probs), cfg.depth());
}

CellProbabilities exhaustive_subsample_cdf(double x,
                                           std::span<const double> reference,
                                           const SubsampleConfig& cfg,
                                           std::uint64_t max_combinations) {
  const auto n = static_cast<std::int64_t>(reference.size());
  const std::int64_t r = cfg.subsample_size();
  check_population(0, n, cfg);
  if (log_binomial(n, r) >
      std::log(static_cast<double>(max_combinations)) + 1e-9) {
    throw Error(ErrorCode::kTooManyCombinations,
                "C(" + std::to_string(n) + ", " + std::to_string(r) +
                    ") exceeds the combination budget");
  }
  const int shift = cfg.exponent() - cfg.depth();

  std::vector<int> below(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    below[i] = (reference[i] <= x) ? 1 : 0;
  }
  std::vector<std::int64_t> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint64_t> tally(cfg.cell_count(), 0);
  std::uint64_t visited = 0;
  while (true) {
    std::int64_t count = 0;
    for (std::int64_t i : idx) count += below[static_cast<std::size_t>(i)];
    ++tally[static_cast<std::size_t>(count >> shift)];
    ++visited;

    std::int64_t pos = r - 1;
    while (pos >= 0 && idx[pos] == n - r + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (std::int64_t j = pos + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::vector<double> probs(cfg.cell_count());
  for (std::size_t c = 0; c < probs.size(); ++c) {
    probs[c] = static_cast<double>(tally[c]) / static_cast<double>(visited);
  }
  return CellProbabilities(std::move(probs), cfg.depth());
}

}  // namespace august
