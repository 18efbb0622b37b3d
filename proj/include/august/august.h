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

#ifndef AUGUST_AUGUST_H_
#define AUGUST_AUGUST_H_

// The two-sample statistic S = -S_X . S_Y, computed either by the O(mn)
// reference algorithm (august) or the sort-and-sweep algorithm
// (august_plus). Both share the count-indexed cell kernel and the tie
// policy, and agree to rounding in every field.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "august/hadamard.h"
#include "august/hypergeom.h"

namespace august {

enum class TieMode { kError, kJitter };

// How duplicates in the pooled sample are handled. In jitter mode each value
// receives seeded uniform noise on (-scale/2, scale/2); scale must be below
// the smallest nonzero gap of the pooled sample, so distinct values keep
// their order. A nonpositive scale selects half of that gap.
struct TiePolicy {
  TieMode mode = TieMode::kError;
  double jitter_scale = 0.0;
  std::uint64_t seed = 0;
};

enum class TieResolution { kNone, kJittered };

struct AugustResult {
  double statistic;
  SymmetryVector s_x;
  SymmetryVector s_y;
  CellProbabilities p_x;
  CellProbabilities p_y;
  int depth;
  std::int64_t m;
  std::int64_t n;
  TieResolution ties;
};

struct ResolvedSamples {
  std::vector<double> x;
  std::vector<double> y;
  TieResolution ties = TieResolution::kNone;
};

// Applies the tie policy. Throws TiesPresent in error mode when the pooled
// sample has duplicates, InvalidTiePolicy for an oversized jitter scale, and
// InvalidArgument for non-finite values.
ResolvedSamples resolve_ties(std::span<const double> x,
                             std::span<const double> y,
                             const TiePolicy& policy);

// O(mn) reference. Throws SampleTooSmall unless m, n >= r.
AugustResult august(std::span<const double> x, std::span<const double> y,
                    const SubsampleConfig& cfg, const TiePolicy& ties = {});
AugustResult august(std::span<const double> x, std::span<const double> y,
                    int depth, const TiePolicy& ties = {});

// O((m+n) log(m+n)): one sort of the pooled sample, a linear sweep that
// histograms cross-sample counts, then one kernel call per distinct count.
AugustResult august_plus(std::span<const double> x, std::span<const double> y,
                         const SubsampleConfig& cfg, const TiePolicy& ties = {});
AugustResult august_plus(std::span<const double> x, std::span<const double> y,
                         int depth, const TiePolicy& ties = {});

// Cosine of the angle between s_x and s_y. Throws DegenerateVector when
// either vector is zero.
double cos_angle(const AugustResult& result);

}  // namespace august

#endif  // AUGUST_AUGUST_H_
