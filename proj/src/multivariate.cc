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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "august/errors.h"
#include "august/parallel.h"

namespace august {
namespace {

constexpr double kMaxCondition = 1e12;

MultiSample take_rows(const MultiSample& pooled, const std::vector<Eigen::Index>& order,
                      std::size_t begin, std::size_t end) {
  MultiSample out(static_cast<Eigen::Index>(end - begin), pooled.cols());
  for (std::size_t i = begin; i < end; ++i) {
    out.row(static_cast<Eigen::Index>(i - begin)) = pooled.row(order[i]);
  }
  return out;
}

}  // namespace

double MahalanobisModel::distance(const Eigen::VectorXd& point) const {
  if (point.size() != mean.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "point dimension differs from the model");
  }
  const Eigen::VectorXd whitened =
      inverse_factor.triangularView<Eigen::Lower>() * (point - mean);
  return whitened.norm();
}

MahalanobisModel fit_mahalanobis(const MultiSample& sample, double ridge,
                                 std::string source_label) {
  const Eigen::Index k = sample.cols();
  const Eigen::Index size = sample.rows();
  if (k < 1) throw Error(ErrorCode::kDimensionMismatch, "sample has no columns");
  if (size <= k) {
    throw Error(ErrorCode::kSampleTooSmall,
                "covariance estimation needs more observations than dimensions");
  }
  if (!(ridge >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ridge must be >= 0");
  if (!sample.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "sample contains non-finite values");
  }

  MahalanobisModel model;
  model.source_label = std::move(source_label);
  model.mean = sample.colwise().mean().transpose();
  const MultiSample centered = sample.rowwise() - model.mean.transpose();
  model.covariance = (centered.transpose() * centered) / static_cast<double>(size - 1);
  model.covariance.diagonal().array() += ridge;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(model.covariance,
                                                     Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxCondition) {
    throw Error(ErrorCode::kSingularCovariance,
                "sample covariance is singular or ill-conditioned; reduce the "
                "dimension or pass a positive ridge");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(model.covariance);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularCovariance, "Cholesky factorization failed");
  }
  const Eigen::MatrixXd lower = llt.matrixL();
  model.inverse_factor = lower.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(k, k));
  return model;
}

std::vector<double> mahalanobis_transform(const MultiSample& sample,
                                          const MahalanobisModel& model) {
  if (static_cast<std::size_t>(sample.cols()) != model.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sample has " + std::to_string(sample.cols()) +
                    " columns but the model has dimension " +
                    std::to_string(model.dimension()));
  }
  const MultiSample centered = sample.rowwise() - model.mean.transpose();
  const Eigen::MatrixXd whitened =
      centered * model.inverse_factor.triangularView<Eigen::Lower>().transpose();
  std::vector<double> out(static_cast<std::size_t>(sample.rows()));
  for (Eigen::Index i = 0; i < sample.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = whitened.row(i).norm();
  }
  return out;
}

MultiResult multivariate_branches(const MultiSample& x, const MultiSample& y,
                                  int depth, const TiePolicy& ties, double ridge) {
  if (x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "samples have different dimensions");
  }
  const auto cfg = SubsampleConfig::for_depth(depth);
  MahalanobisModel model_x = fit_mahalanobis(x, ridge, "X");
  MahalanobisModel model_y = fit_mahalanobis(y, ridge, "Y");
  AugustResult bx = august_plus(mahalanobis_transform(x, model_x),
                                mahalanobis_transform(y, model_x), cfg, ties);
  AugustResult by = august_plus(mahalanobis_transform(x, model_y),
                                mahalanobis_transform(y, model_y), cfg, ties);
  const bool x_wins = bx.statistic >= by.statistic;
  const double statistic = std::max(bx.statistic, by.statistic);
  return MultiResult{statistic,
                     std::move(bx),
                     std::move(by),
                     x_wins ? MultiBranch::kX : MultiBranch::kY,
                     std::move(model_x),
                     std::move(model_y),
                     std::numeric_limits<double>::quiet_NaN(),
                     0};
}

double multivariate_statistic(const MultiSample& x, const MultiSample& y, int depth,
                              const TiePolicy& ties, double ridge) {
  return multivariate_branches(x, y, depth, ties, ridge).statistic;
}

double multivariate_permutation_p_value(const MultiSample& x, const MultiSample& y,
                                        int depth, std::int64_t permutations,
                                        std::uint64_t seed, const TiePolicy& ties,
                                        double ridge) {
  if (permutations < 100) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 100 permutations");
  }
  if (x.cols() != y.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "samples have different dimensions");
  }
  const double observed = multivariate_statistic(x, y, depth, ties, ridge);
  MultiSample pooled(x.rows() + y.rows(), x.cols());
  pooled << x, y;
  const auto m = static_cast<std::size_t>(x.rows());
  const auto total = static_cast<std::size_t>(pooled.rows());

  std::vector<char> exceeds(static_cast<std::size_t>(permutations), 0);
  parallel_for(exceeds.size(), [&](std::size_t p) {
    Rng rng = replicate_rng(seed, p);
    std::vector<Eigen::Index> order(total);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    const MultiSample px = take_rows(pooled, order, 0, m);
    const MultiSample py = take_rows(pooled, order, m, total);
    exceeds[p] = multivariate_statistic(px, py, depth, ties, ridge) >= observed;
  });
  std::int64_t count = 0;
  for (char e : exceeds) count += e;
  return static_cast<double>(1 + count) / static_cast<double>(permutations + 1);
}

MultiResult multivariate_test(const MultiSample& x, const MultiSample& y, int depth,
                              std::int64_t permutations, std::uint64_t seed,
                              const TiePolicy& ties, double ridge) {
  MultiResult result = multivariate_branches(x, y, depth, ties, ridge);
  result.p_value =
      multivariate_permutation_p_value(x, y, depth, permutations, seed, ties, ridge);
  result.permutations = permutations;
  return result;
}

double multivariate_power_simulation(const PointSampler& gen_x, const PointSampler& gen_y,
                                     const PowerConfig& cfg, std::int64_t permutations,
                                     double ridge) {
  if (cfg.reps < 100) {
    throw Error(ErrorCode::kInvalidArgument, "power simulation needs reps >= 100");
  }
  const TiePolicy ties{TieMode::kJitter, 0.0, cfg.seed};
  std::vector<char> rejected(static_cast<std::size_t>(cfg.reps), 0);
  parallel_for(rejected.size(), [&](std::size_t rep) {
    Rng rng = replicate_rng(cfg.seed, rep);
    MultiSample x(cfg.m, 0), y(cfg.n, 0);
    for (Eigen::Index i = 0; i < cfg.m; ++i) {
      const Eigen::VectorXd p = gen_x(rng);
      if (i == 0) x.resize(cfg.m, p.size());
      x.row(i) = p.transpose();
    }
    for (Eigen::Index i = 0; i < cfg.n; ++i) {
      const Eigen::VectorXd p = gen_y(rng);
      if (i == 0) y.resize(cfg.n, p.size());
      y.row(i) = p.transpose();
    }
    const double p = multivariate_permutation_p_value(
        x, y, cfg.depth, permutations, derive_seed(cfg.seed ^ 0x6D756C7469ULL, rep), ties, ridge);
    rejected[rep] = p <= cfg.alpha;
  });
  std::int64_t count = 0;
  for (char r : rejected) count += r;
  return static_cast<double>(count) / static_cast<double>(cfg.reps);
}

}  // namespace august
