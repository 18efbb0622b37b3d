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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "august/errors.h"
#include "test_util.h"

namespace august {
namespace {

void expect_results_near(const AugustResult& a, const AugustResult& b, double tol) {
  EXPECT_NEAR(a.statistic, b.statistic, tol);
  ASSERT_EQ(a.s_x.size(), b.s_x.size());
  for (std::size_t i = 0; i < a.s_x.size(); ++i) {
    EXPECT_NEAR(a.s_x[i], b.s_x[i], tol);
    EXPECT_NEAR(a.s_y[i], b.s_y[i], tol);
  }
  for (std::size_t i = 0; i < a.p_x.size(); ++i) {
    EXPECT_NEAR(a.p_x[i], b.p_x[i], tol);
    EXPECT_NEAR(a.p_y[i], b.p_y[i], tol);
  }
}

// Statistic straight from the definition: average augmented CDFs, dense
// Hadamard product, negative inner product.
double definition_statistic(const std::vector<double>& x, const std::vector<double>& y,
                            int d) {
  const auto cfg = SubsampleConfig::for_depth(d);
  const std::size_t cells = cfg.cell_count();
  std::vector<double> px(cells, 0.0), py(cells, 0.0);
  for (double v : x) {
    const auto p = augmented_cdf(v, y, cfg);
    for (std::size_t c = 0; c < cells; ++c) px[c] += p[c] / static_cast<double>(x.size());
  }
  for (double v : y) {
    const auto p = augmented_cdf(v, x, cfg);
    for (std::size_t c = 0; c < cells; ++c) py[c] += p[c] / static_cast<double>(y.size());
  }
  const auto h = sylvester(d);
  double s = 0.0;
  for (std::size_t i = 1; i < cells; ++i) {
    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < cells; ++j) {
      a += h(i, j) * px[j];
      b += h(i, j) * py[j];
    }
    s -= a * b;
  }
  return s;
}

TEST(AugustTest, MatchesDefinition) {
  std::mt19937_64 rng(1);
  for (int d = 1; d <= 3; ++d) {
    const auto x = testing::normal_sample(40, rng);
    const auto y = testing::normal_sample(33, rng, 0.5);
    EXPECT_NEAR(august(x, y, d).statistic, definition_statistic(x, y, d), 1e-12);
  }
}

TEST(AugustTest, StatisticIsNegativeDot) {
  std::mt19937_64 rng(2);
  const auto x = testing::normal_sample(50, rng);
  const auto y = testing::normal_sample(60, rng, 0.3, 1.5);
  const auto r = august_plus(x, y, 3);
  EXPECT_NEAR(r.statistic, -dot(r.s_x, r.s_y), 1e-12);
  EXPECT_EQ(r.m, 50);
  EXPECT_EQ(r.n, 60);
  EXPECT_EQ(r.depth, 3);
  EXPECT_EQ(r.ties, TieResolution::kNone);
}

TEST(AugustTest, PlusMatchesNaive) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 5);
    const std::size_t m = 63 + rng() % 200;
    const std::size_t n = 63 + rng() % 200;
    const auto x = testing::normal_sample(m, rng);
    const auto y = testing::normal_sample(n, rng, 0.2 * static_cast<double>(rng() % 3));
    expect_results_near(august(x, y, d), august_plus(x, y, d), 1e-12);
  }
}

TEST(AugustTest, SeparatedSamples) {
  std::mt19937_64 rng(4);
  for (int d = 1; d <= 5; ++d) {
    const std::size_t r = (std::size_t{1} << (d + 1)) - 1;
    const auto x = testing::uniform_sample(r + 5, rng, 0.0, 1.0);
    const auto y = testing::uniform_sample(r + 9, rng, 2.0, 3.0);
    for (const auto& res : {august(x, y, d), august_plus(x, y, d), august_plus(y, x, d)}) {
      EXPECT_EQ(res.statistic, 1.0);
      EXPECT_EQ(cos_angle(res), -1.0 / static_cast<double>((1 << d) - 1));
    }
    const auto res = august_plus(x, y, d);
    for (double v : res.s_x.stats) EXPECT_EQ(v, 1.0);
    EXPECT_EQ(dot(res.s_x, res.s_y), -1.0);
  }
}

TEST(AugustTest, SeparatedAngleSpecialCases) {
  std::mt19937_64 rng(5);
  const auto x = testing::uniform_sample(20, rng, 0, 1);
  const auto y = testing::uniform_sample(20, rng, 5, 6);
  EXPECT_EQ(cos_angle(august_plus(x, y, 3)), -1.0 / 7.0);
  EXPECT_EQ(cos_angle(august_plus(x, y, 1)), -1.0);
}

TEST(AugustTest, ParallelVectorsGiveUnitCosine) {
  AugustResult r = august_plus(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1.5, 2.5, 3.5, 4.5}, 1);
  r.s_y = r.s_x;
  EXPECT_NEAR(cos_angle(r), 1.0, 1e-15);
}

TEST(AugustTest, DegenerateAngle) {
  AugustResult r = august_plus(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1.5, 2.5, 3.5, 4.5}, 1);
  r.s_x.stats.assign(r.s_x.size(), 0.0);
  try {
    cos_angle(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateVector);
  }
}

TEST(AugustTest, SwapSymmetry) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::normal_sample(70, rng);
    const auto y = testing::normal_sample(90, rng, 0.4);
    EXPECT_NEAR(august_plus(x, y, 3).statistic, august_plus(y, x, 3).statistic, 1e-15);
    EXPECT_NEAR(august(x, y, 2).statistic, august(y, x, 2).statistic, 1e-15);
  }
}

TEST(AugustTest, RankInvariance) {
  std::mt19937_64 rng(7);
  const auto x = testing::normal_sample(80, rng);
  const auto y = testing::normal_sample(80, rng, 0.3);
  std::vector<double> ex(x.size()), ey(y.size());
  auto g = [](double v) { return std::exp(v) + v * v * v; };
  std::transform(x.begin(), x.end(), ex.begin(), g);
  std::transform(y.begin(), y.end(), ey.begin(), g);
  EXPECT_EQ(august_plus(x, y, 3).statistic, august_plus(ex, ey, 3).statistic);
}

TEST(AugustTest, StatisticBounded) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    const auto x = testing::normal_sample(40, rng);
    const auto y = testing::normal_sample(40, rng, 3.0 * std::uniform_real_distribution<>(0, 1)(rng));
    const double s = august_plus(x, y, d).statistic;
    EXPECT_LE(std::abs(s), static_cast<double>((1 << d) - 1));
  }
}

TEST(AugustTest, Deterministic) {
  std::mt19937_64 rng(9);
  const auto x = testing::normal_sample(100, rng);
  const auto y = testing::normal_sample(120, rng);
  const auto a = august_plus(x, y, 4);
  const auto b = august_plus(x, y, 4);
  EXPECT_EQ(a.statistic, b.statistic);
  EXPECT_EQ(a.s_x, b.s_x);
  EXPECT_EQ(a.p_y, b.p_y);
}

TEST(AugustTest, SizePrecondition) {
  const std::vector<double> small = {1, 2, 3, 4, 5, 6};
  const std::vector<double> big = {1.5, 2.5, 3.5, 4.5, 5.5, 6.5, 7.5, 8.5};
  for (auto fn : {+[](std::span<const double> a, std::span<const double> b) { return august(a, b, 2); },
                  +[](std::span<const double> a, std::span<const double> b) { return august_plus(a, b, 2); }}) {
    try {
      fn(small, big);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kSampleTooSmall);
    }
  }
}

TEST(TieTest, ErrorModeRejectsTies) {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {4, 5, 6, 7};
  for (bool plus : {false, true}) {
    try {
      plus ? august_plus(x, y, 1) : august(x, y, 1);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kTiesPresent);
    }
  }
}

TEST(TieTest, JitterBreaksTiesAndKeepsOrder) {
  const std::vector<double> x = {1, 2, 2, 3, 5, 8};
  const std::vector<double> y = {2, 3, 4, 4, 6, 7};
  TiePolicy policy{TieMode::kJitter, 0.0, 42};
  const auto resolved = resolve_ties(x, y, policy);
  EXPECT_EQ(resolved.ties, TieResolution::kJittered);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_LT(std::abs(resolved.x[i] - x[i]), 0.25 + 1e-15);
    EXPECT_LT(std::abs(resolved.y[i] - y[i]), 0.25 + 1e-15);
  }
  // Distinct original values keep their relative order.
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (x[i] < y[j]) {
        EXPECT_LT(resolved.x[i], resolved.y[j]);
      }
      if (x[i] > y[j]) {
        EXPECT_GT(resolved.x[i], resolved.y[j]);
      }
    }
  }
  const auto a = august_plus(x, y, 1, policy);
  const auto b = august(x, y, 1, policy);
  EXPECT_EQ(a.ties, TieResolution::kJittered);
  EXPECT_NEAR(a.statistic, b.statistic, 1e-12);
  EXPECT_EQ(a.statistic, august_plus(x, y, 1, policy).statistic);
}

TEST(TieTest, OversizedScaleRejected) {
  const std::vector<double> x = {1, 2, 2, 3};
  const std::vector<double> y = {4, 5, 6, 7};
  try {
    resolve_ties(x, y, TiePolicy{TieMode::kJitter, 1.0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTiePolicy);
  }
}

TEST(TieTest, NoTiesLeavesDataUntouched) {
  const std::vector<double> x = {1, 2, 3};
  const std::vector<double> y = {4, 5, 6};
  const auto r = resolve_ties(x, y, TiePolicy{TieMode::kJitter, 0.0, 3});
  EXPECT_EQ(r.ties, TieResolution::kNone);
  EXPECT_EQ(r.x, x);
  EXPECT_EQ(r.y, y);
}

TEST(TieTest, NonFiniteRejected) {
  const std::vector<double> x = {1, NAN, 3};
  const std::vector<double> y = {4, 5, 6};
  EXPECT_THROW(resolve_ties(x, y, {}), Error);
}

}  // namespace
}  // namespace august
