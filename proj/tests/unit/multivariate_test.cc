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

#include "august/multivariate.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "august/errors.h"
#include "august/families.h"

namespace august {
namespace {

MultiSample gaussian(Eigen::Index n, Eigen::Index k, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  MultiSample z(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) z(i, j) = dist(rng);
  }
  return z;
}

MultiSample affine(const MultiSample& z, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return (z * a.transpose()).rowwise() + b.transpose();
}

TEST(MahalanobisTest, FitMatchesMoments) {
  std::mt19937_64 rng(1);
  const MultiSample z = gaussian(20000, 2, rng);
  const auto model = fit_mahalanobis(z);
  EXPECT_NEAR(model.mean(0), 0.0, 3.0 / std::sqrt(20000.0));
  EXPECT_NEAR(model.mean(1), 0.0, 3.0 / std::sqrt(20000.0));
  const double se = 3.0 * std::sqrt(2.0 / 20000.0);
  EXPECT_NEAR(model.covariance(0, 0), 1.0, se);
  EXPECT_NEAR(model.covariance(1, 1), 1.0, se);
  EXPECT_NEAR(model.covariance(0, 1), 0.0, se);
  EXPECT_EQ(model.covariance(0, 1), model.covariance(1, 0));
  EXPECT_NEAR(model.distance(model.mean), 0.0, 1e-15);
  // W^T W inverts the covariance.
  const Eigen::MatrixXd prod =
      model.inverse_factor.transpose() * model.inverse_factor * model.covariance;
  EXPECT_LT((prod - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MahalanobisTest, IdentityModelIsEuclidean) {
  MahalanobisModel model{Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2),
                         Eigen::MatrixXd::Identity(2, 2), "unit"};
  MultiSample p(1, 2);
  p << 3, 4;
  EXPECT_DOUBLE_EQ(mahalanobis_transform(p, model)[0], 5.0);
}

TEST(MahalanobisTest, SingularAndSmallInputs) {
  MultiSample same(10, 2);
  same.setConstant(1.5);
  try {
    fit_mahalanobis(same);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularCovariance);
  }
  MultiSample collinear(10, 2);
  for (int i = 0; i < 10; ++i) collinear.row(i) << i, 2.0 * i;
  EXPECT_THROW(fit_mahalanobis(collinear), Error);
  EXPECT_NO_THROW(fit_mahalanobis(collinear, 0.1));
  EXPECT_THROW(fit_mahalanobis(MultiSample(2, 2)), Error);
}

TEST(MahalanobisTest, DimensionMismatch) {
  std::mt19937_64 rng(2);
  const auto model = fit_mahalanobis(gaussian(30, 3, rng));
  try {
    mahalanobis_transform(gaussian(5, 2, rng), model);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(MahalanobisTest, NonnegativeAndAffineInvariant) {
  std::mt19937_64 rng(3);
  const MultiSample x = gaussian(200, 3, rng);
  const MultiSample z = gaussian(50, 3, rng);
  Eigen::MatrixXd a(3, 3);
  a << 2, 0.5, -1, 0, 1, 3, 0.2, -0.7, 1.5;
  const Eigen::VectorXd b = Eigen::Vector3d(4, -2, 7);
  const auto before = mahalanobis_transform(z, fit_mahalanobis(x));
  const auto after = mahalanobis_transform(affine(z, a, b), fit_mahalanobis(affine(x, a, b)));
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_GE(before[i], 0.0);
    EXPECT_NEAR(before[i], after[i], 1e-8);
  }
}

TEST(MultivariateTest, MaxOfBranches) {
  std::mt19937_64 rng(4);
  const MultiSample x = gaussian(100, 2, rng);
  MultiSample y = gaussian(120, 2, rng);
  y.col(0) *= 2.0;
  const auto res = multivariate_branches(x, y);
  EXPECT_EQ(res.statistic, std::max(res.branch_x.statistic, res.branch_y.statistic));
  EXPECT_EQ(res.attained_by == MultiBranch::kX,
            res.branch_x.statistic >= res.branch_y.statistic);
  EXPECT_EQ(res.branch_x.depth, kDefaultMultivariateDepth);
  EXPECT_TRUE(std::isnan(res.p_value));
}

TEST(MultivariateTest, SwapAndAffineInvariance) {
  std::mt19937_64 rng(5);
  const MultiSample x = gaussian(90, 2, rng);
  const MultiSample y = gaussian(80, 2, rng) * 1.3;
  const double s = multivariate_statistic(x, y);
  EXPECT_EQ(s, multivariate_statistic(y, x));
  Eigen::MatrixXd a(2, 2);
  a << 1.5, -2, 0.3, 0.8;
  const Eigen::VectorXd b = Eigen::Vector2d(-3, 10);
  EXPECT_NEAR(s, multivariate_statistic(affine(x, a, b), affine(y, a, b)), 1e-8);
}

TEST(MultivariateTest, PermutationPValue) {
  std::mt19937_64 rng(6);
  const MultiSample x = gaussian(40, 2, rng);
  MultiSample y = gaussian(40, 2, rng) * 6.0;
  const double p = multivariate_permutation_p_value(x, y, 2, 199, 7);
  EXPECT_DOUBLE_EQ(p, 1.0 / 200.0);
  EXPECT_EQ(p, multivariate_permutation_p_value(x, y, 2, 199, 7));
  EXPECT_THROW(multivariate_permutation_p_value(x, y, 2, 20, 7), Error);
  const auto full = multivariate_test(x, y, 2, 199, 7);
  EXPECT_EQ(full.p_value, p);
  EXPECT_EQ(full.permutations, 199);
}

TEST(MultivariateTest, QuickLevelCheck) {
  const auto fam = bivariate_family("bivariate-null", 0.0);
  int rejections = 0;
  const int trials = 150;
  for (int t = 0; t < trials; ++t) {
    Rng rng = replicate_rng(99, static_cast<std::uint64_t>(t));
    const MultiSample x = draw_points(fam.x, 40, rng);
    const MultiSample y = draw_points(fam.y, 40, rng);
    rejections += multivariate_permutation_p_value(x, y, 2, 99 + 1, static_cast<std::uint64_t>(t)) <= 0.05;
  }
  EXPECT_LE(rejections, 18);  // about 0.05 * 150 + 4 sd
}

TEST(MultivariateTest, DimensionMismatch) {
  std::mt19937_64 rng(7);
  EXPECT_THROW(multivariate_statistic(gaussian(30, 2, rng), gaussian(30, 3, rng)), Error);
}

}  // namespace
}  // namespace august
