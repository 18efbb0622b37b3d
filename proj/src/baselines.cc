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

#include "august/baselines.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "august/errors.h"
#include "august/parallel.h"

namespace august {
namespace {

void check_nonempty(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) {
    throw Error(ErrorCode::kEmptySample, "baseline tests need nonempty samples");
  }
}

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

// sum_{i,j} |a_i - a_j| for sorted a.
double within_sum(const std::vector<double>& a) {
  const double n = static_cast<double>(a.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += a[k] * (2.0 * static_cast<double>(k + 1) - n - 1.0);
  }
  return 2.0 * acc;
}

// sum_{i,j} |a_i - b_j| for sorted a, b.
double cross_sum(const std::vector<double>& a, const std::vector<double>& b) {
  double total_b = 0.0;
  for (double v : b) total_b += v;
  double below_sum = 0.0;
  std::size_t below = 0;
  double acc = 0.0;
  const double nb = static_cast<double>(b.size());
  for (double v : a) {
    while (below < b.size() && b[below] < v) below_sum += b[below++];
    const double cnt = static_cast<double>(below);
    acc += v * cnt - below_sum + (total_b - below_sum) - v * (nb - cnt);
  }
  return acc;
}

}  // namespace

std::string_view baseline_name(BaselineTest test) {
  return test == BaselineTest::kKolmogorovSmirnov ? "ks" : "energy";
}

double ks_statistic(std::span<const double> x, std::span<const double> y) {
  check_nonempty(x, y);
  const std::vector<double> a = sorted_copy(x);
  const std::vector<double> b = sorted_copy(y);
  const auto m = static_cast<std::int64_t>(a.size());
  const auto n = static_cast<std::int64_t>(b.size());
  std::size_t i = 0, j = 0;
  std::int64_t widest = 0;
  while (i < a.size() || j < b.size()) {
    double v;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      v = a[i];
    } else {
      v = b[j];
    }
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    // |i/m - j/n| scaled by mn stays integral.
    const std::int64_t gap = std::llabs(static_cast<std::int64_t>(i) * n -
                                        static_cast<std::int64_t>(j) * m);
    widest = std::max(widest, gap);
  }
  return static_cast<double>(widest) / (static_cast<double>(m) * static_cast<double>(n));
}

double energy_statistic(std::span<const double> x, std::span<const double> y) {
  check_nonempty(x, y);
  const std::vector<double> a = sorted_copy(x);
  const std::vector<double> b = sorted_copy(y);
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  const double value = 2.0 * cross_sum(a, b) / (m * n) -
                       within_sum(a) / (m * m) - within_sum(b) / (n * n);
  return std::max(0.0, value);
}

double baseline_statistic(BaselineTest test, std::span<const double> x,
                          std::span<const double> y) {
  return test == BaselineTest::kKolmogorovSmirnov ? ks_statistic(x, y)
                                                  : energy_statistic(x, y);
}

BaselineResult baseline_permutation_test(BaselineTest test,
                                         std::span<const double> x,
                                         std::span<const double> y,
                                         std::int64_t permutations,
                                         std::uint64_t seed) {
  if (permutations < 100) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 100 permutations");
  }
  const double observed = baseline_statistic(test, x, y);
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::size_t m = x.size();

  std::vector<char> exceeds(static_cast<std::size_t>(permutations), 0);
  parallel_for(exceeds.size(), [&](std::size_t p) {
    Rng rng = replicate_rng(seed, p);
    std::vector<double> shuffled = pooled;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::span<const double> all(shuffled);
    const double stat = baseline_statistic(test, all.first(m), all.subspan(m));
    exceeds[p] = stat >= observed ? 1 : 0;
  });
  std::int64_t count = 0;
  for (char e : exceeds) count += e;
  return BaselineResult{test, observed,
                        static_cast<double>(1 + count) /
                            static_cast<double>(permutations + 1),
                        permutations};
}

}  // namespace august
