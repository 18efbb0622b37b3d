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

#ifndef AUGUST_MULTIVARIATE_H_
#define AUGUST_MULTIVARIATE_H_

// Mutual Mahalanobis reduction: each k-dimensional sample is mapped to
// distances under both samples' fitted moments, and the statistic is the
// larger of the two resulting univariate statistics. Cells become nested
// elliptical rings around the fitted mean.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "august/august.h"
#include "august/families.h"
#include "august/inference.h"

namespace august {

// Observations in rows.
using MultiSample = Eigen::MatrixXd;

inline constexpr int kDefaultMultivariateDepth = 2;

struct MahalanobisModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;      // sample covariance (+ ridge I)
  Eigen::MatrixXd inverse_factor;  // lower-triangular W, W^T W = covariance^-1
  std::string source_label;

  std::size_t dimension() const { return static_cast<std::size_t>(mean.size()); }
  double distance(const Eigen::VectorXd& point) const;
};

// Sample mean and covariance (divisor size - 1) plus ridge * I.
// Throws SampleTooSmall unless size > dimension, and SingularCovariance when
// the covariance is not positive definite or its condition number exceeds
// 1e12 (reduce the dimension or pass ridge > 0).
MahalanobisModel fit_mahalanobis(const MultiSample& sample, double ridge = 0.0,
                                 std::string source_label = "");

// Throws DimensionMismatch.
std::vector<double> mahalanobis_transform(const MultiSample& sample,
                                          const MahalanobisModel& model);

enum class MultiBranch { kX, kY };

struct MultiResult {
  double statistic;
  AugustResult branch_x;  // distances under X's moments
  AugustResult branch_y;  // distances under Y's moments
  MultiBranch attained_by;
  MahalanobisModel model_x;
  MahalanobisModel model_y;
  double p_value;  // NaN until a permutation p-value is attached
  std::int64_t permutations;
};

// Statistic and both branches, no p-value.
MultiResult multivariate_branches(const MultiSample& x, const MultiSample& y,
                                  int depth = kDefaultMultivariateDepth,
                                  const TiePolicy& ties = {}, double ridge = 0.0);

double multivariate_statistic(const MultiSample& x, const MultiSample& y,
                              int depth = kDefaultMultivariateDepth,
                              const TiePolicy& ties = {}, double ridge = 0.0);

// Add-one permutation p-value; every relabeling refits both models and
// takes the max again. Throws InvalidArgument when permutations < 100.
double multivariate_permutation_p_value(const MultiSample& x, const MultiSample& y,
                                        int depth, std::int64_t permutations,
                                        std::uint64_t seed,
                                        const TiePolicy& ties = {}, double ridge = 0.0);

MultiResult multivariate_test(const MultiSample& x, const MultiSample& y, int depth,
                              std::int64_t permutations, std::uint64_t seed,
                              const TiePolicy& ties = {}, double ridge = 0.0);

// Fraction of replicates whose permutation p-value is <= alpha, with
// samples of cfg.m and cfg.n points. Throws InvalidArgument when
// cfg.reps < 100.
double multivariate_power_simulation(const PointSampler& gen_x, const PointSampler& gen_y,
                                     const PowerConfig& cfg, std::int64_t permutations,
                                     double ridge = 0.0);

}  // namespace august

#endif  // AUGUST_MULTIVARIATE_H_
