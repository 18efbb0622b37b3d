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

#ifndef AUGUST_BASELINES_H_
#define AUGUST_BASELINES_H_

// Reference two-sample tests for power comparisons: Kolmogorov-Smirnov and
// energy distance, both calibrated by permutation.

#include <cstdint>
#include <span>
#include <string_view>

namespace august {

enum class BaselineTest { kKolmogorovSmirnov, kEnergy };

std::string_view baseline_name(BaselineTest test);

struct BaselineResult {
  BaselineTest name;
  double statistic;
  double p_value;
  std::int64_t permutations;
};

// sup |F_X - F_Y| over the pooled sample, from one merged pass over the
// sorted samples. Exact up to the final integer division. Throws EmptySample.
double ks_statistic(std::span<const double> x, std::span<const double> y);

// V-statistic form 2 E|X - Y| - E|X - X'| - E|Y - Y'| with full double sums
// divided by mn, m^2 and n^2. Computed in O(N log N) from sorted prefix sums.
// Rounding can leave -1e-16-scale residue for identical samples, so the
// result is clamped at zero. Throws EmptySample.
double energy_statistic(std::span<const double> x, std::span<const double> y);

double baseline_statistic(BaselineTest test, std::span<const double> x,
                          std::span<const double> y);

// Add-one permutation p-value over random relabelings with fixed group
// sizes. Throws InvalidArgument when permutations < 100.
BaselineResult baseline_permutation_test(BaselineTest test,
                                         std::span<const double> x,
                                         std::span<const double> y,
                                         std::int64_t permutations,
                                         std::uint64_t seed);

}  // namespace august

#endif  // AUGUST_BASELINES_H_
