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

#include "august/august.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "august/errors.h"
#include "august/parallel.h"

namespace august {
namespace {

void check_sizes(std::size_t m, std::size_t n, const SubsampleConfig& cfg) {
  const auto r = static_cast<std::size_t>(cfg.subsample_size());
  if (m < r || n < r) {
    throw Error(ErrorCode::kSampleTooSmall,
                "samples of sizes " + std::to_string(m) + " and " +
                    std::to_string(n) + " are below the depth-" +
                    std::to_string(cfg.depth()) + " minimum of " +
                    std::to_string(r));
  }
}

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "sample contains a non-finite value");
    }
  }
}

std::vector<double> pooled_sorted(std::span<const double> x,
                                  std::span<const double> y) {
  std::vector<double> pooled;
  pooled.reserve(x.size() + y.size());
  pooled.insert(pooled.end(), x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  std::sort(pooled.begin(), pooled.end());
  return pooled;
}

bool has_adjacent_duplicates(const std::vector<double>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

double smallest_nonzero_gap(const std::vector<double>& sorted) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double d = sorted[i] - sorted[i - 1];
    if (d > 0.0) gap = std::min(gap, d);
  }
  return gap;
}

AugustResult finish(std::vector<double> px, std::vector<double> py,
                    const SubsampleConfig& cfg, std::int64_t m, std::int64_t n,
                    TieResolution ties) {
  CellProbabilities p_x(std::move(px), cfg.depth());
  CellProbabilities p_y(std::move(py), cfg.depth());
  SymmetryVector s_x = symmetry_statistics(p_x);
  SymmetryVector s_y = symmetry_statistics(p_y);
  const double statistic = -dot(s_x, s_y);
  return AugustResult{statistic,      std::move(s_x), std::move(s_y),
                      std::move(p_x), std::move(p_y), cfg.depth(),
                      m,              n,              ties};
}

// True when the pooled sample has ties that the policy says to jitter away.
bool needs_resolution(std::span<const double> x, std::span<const double> y,
                      const TiePolicy& policy) {
  check_finite(x);
  check_finite(y);
  if (!has_adjacent_duplicates(pooled_sorted(x, y))) return false;
  if (policy.mode == TieMode::kError) {
    throw Error(ErrorCode::kTiesPresent,
                "pooled sample contains tied values; rerun with jitter "
                "tie handling or remove duplicates");
  }
  return true;
}

}  // namespace

ResolvedSamples resolve_ties(std::span<const double> x,
                             std::span<const double> y,
                             const TiePolicy& policy) {
  ResolvedSamples out{std::vector<double>(x.begin(), x.end()),
                      std::vector<double>(y.begin(), y.end()),
                      TieResolution::kNone};
  if (!needs_resolution(x, y, policy)) return out;

  const std::vector<double> sorted = pooled_sorted(x, y);
  const double gap = smallest_nonzero_gap(sorted);
  double scale = policy.jitter_scale;
  if (scale > 0.0) {
    if (!(scale < gap)) {
      throw Error(ErrorCode::kInvalidTiePolicy,
                  "jitter scale must be smaller than the minimal nonzero gap");
    }
  } else if (std::isfinite(gap)) {
    scale = 0.5 * gap;
  } else {
    // Every pooled value is identical.
    scale = 1e-6 * std::max(1.0, std::abs(sorted.front()));
  }

  Rng rng(policy.seed);
  std::uniform_real_distribution<double> noise(-0.5 * scale, 0.5 * scale);
  for (double& v : out.x) v += noise(rng);
  for (double& v : out.y) v += noise(rng);
  if (has_adjacent_duplicates(pooled_sorted(out.x, out.y))) {
    throw Error(ErrorCode::kTiesPresent,
                "jitter did not separate tied values; the jitter scale is "
                "below the floating-point resolution of the data");
  }
  out.ties = TieResolution::kJittered;
  return out;
}

AugustResult august(std::span<const double> x, std::span<const double> y,
                    const SubsampleConfig& cfg, const TiePolicy& ties) {
  check_sizes(x.size(), y.size(), cfg);
  if (needs_resolution(x, y, ties)) {
    const ResolvedSamples resolved = resolve_ties(x, y, ties);
    AugustResult result = august(resolved.x, resolved.y, cfg, TiePolicy{});
    result.ties = TieResolution::kJittered;
    return result;
  }
  const auto m = static_cast<std::int64_t>(x.size());
  const auto n = static_cast<std::int64_t>(y.size());
  const std::size_t cells = cfg.cell_count();
  std::vector<double> px(cells, 0.0), py(cells, 0.0), scratch(cells);

  for (double xi : x) {
    hypergeometric_cells(count_at_or_below(xi, y), n, cfg, scratch);
    for (std::size_t c = 0; c < cells; ++c) px[c] += scratch[c];
  }
  for (double yj : y) {
    hypergeometric_cells(count_at_or_below(yj, x), m, cfg, scratch);
    for (std::size_t c = 0; c < cells; ++c) py[c] += scratch[c];
  }
  for (std::size_t c = 0; c < cells; ++c) {
    px[c] /= static_cast<double>(m);
    py[c] /= static_cast<double>(n);
  }
  return finish(std::move(px), std::move(py), cfg, m, n, TieResolution::kNone);
}

AugustResult august(std::span<const double> x, std::span<const double> y,
                    int depth, const TiePolicy& ties) {
  return august(x, y, SubsampleConfig::for_depth(depth), ties);
}

AugustResult august_plus(std::span<const double> x, std::span<const double> y,
                         const SubsampleConfig& cfg, const TiePolicy& ties) {
  check_sizes(x.size(), y.size(), cfg);
  check_finite(x);
  check_finite(y);
  const auto m = static_cast<std::int64_t>(x.size());
  const auto n = static_cast<std::int64_t>(y.size());

  struct Tagged {
    double value;
    bool from_x;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(x.size() + y.size());
  for (double v : x) pooled.push_back({v, true});
  for (double v : y) pooled.push_back({v, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Tagged& a, const Tagged& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < pooled.size(); ++i) {
    if (pooled[i].value == pooled[i - 1].value) {
      if (ties.mode == TieMode::kError) {
        throw Error(ErrorCode::kTiesPresent,
                    "pooled sample contains tied values; rerun with jitter "
                    "tie handling or remove duplicates");
      }
      const ResolvedSamples resolved = resolve_ties(x, y, ties);
      AugustResult result = august_plus(resolved.x, resolved.y, cfg, TiePolicy{});
      result.ties = TieResolution::kJittered;
      return result;
    }
  }

  // hist_x[c]: X points with exactly c Y points below them; hist_y likewise.
  std::vector<std::int64_t> hist_x(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> hist_y(static_cast<std::size_t>(m) + 1, 0);
  std::int64_t seen_x = 0;
  std::int64_t seen_y = 0;
  for (const Tagged& t : pooled) {
    if (t.from_x) {
      ++seen_x;
      ++hist_x[static_cast<std::size_t>(seen_y)];
    } else {
      ++seen_y;
      ++hist_y[static_cast<std::size_t>(seen_x)];
    }
  }

  const std::size_t cells = cfg.cell_count();
  std::vector<double> scratch(cells);
  auto accumulate = [&](const std::vector<std::int64_t>& hist,
                        std::int64_t population, std::int64_t size) {
    std::vector<double> acc(cells, 0.0);
    for (std::size_t c = 0; c < hist.size(); ++c) {
      if (hist[c] == 0) continue;
      hypergeometric_cells(static_cast<std::int64_t>(c), population, cfg,
                           scratch);
      const double weight = static_cast<double>(hist[c]);
      for (std::size_t k = 0; k < cells; ++k) acc[k] += weight * scratch[k];
    }
    for (double& v : acc) v /= static_cast<double>(size);
    return acc;
  };
  return finish(accumulate(hist_x, n, m), accumulate(hist_y, m, n), cfg, m, n,
                TieResolution::kNone);
}

AugustResult august_plus(std::span<const double> x, std::span<const double> y,
                         int depth, const TiePolicy& ties) {
  return august_plus(x, y, SubsampleConfig::for_depth(depth), ties);
}

double cos_angle(const AugustResult& result) {
  const double xx = dot(result.s_x, result.s_x);
  const double yy = dot(result.s_y, result.s_y);
  if (xx == 0.0 || yy == 0.0) {
    throw Error(ErrorCode::kDegenerateVector,
                "a symmetry vector is zero (exactly uniform cell "
                "probabilities); the angle is undefined");
  }
  return dot(result.s_x, result.s_y) / std::sqrt(xx * yy);
}

}  // namespace august
