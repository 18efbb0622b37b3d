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

#include "august/inference.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "august/errors.h"
#include "august/families.h"

namespace august {
namespace {

// Ties among continuous draws have probability ~1e-12; jitter keeps a long
// simulation from aborting on one.
TiePolicy simulation_ties(std::uint64_t seed, std::uint64_t index) {
  return TiePolicy{TieMode::kJitter, 0.0, derive_seed(seed ^ 0x7469657355ULL, index)};
}

void draw(const Sampler& sampler, Rng& rng, std::vector<double>& out,
          std::int64_t count) {
  out.resize(static_cast<std::size_t>(count));
  for (double& v : out) v = sampler(rng);
}

void check_null_sizes(std::int64_t m, std::int64_t n, int depth) {
  const auto cfg = SubsampleConfig::for_depth(depth);
  if (m < cfg.subsample_size() || n < cfg.subsample_size()) {
    throw Error(ErrorCode::kSampleTooSmall,
                "null simulation sizes are below the depth minimum of " +
                    std::to_string(cfg.subsample_size()));
  }
}

}  // namespace

NullTable build_null_table(std::int64_t m, std::int64_t n, int depth,
                           std::int64_t sims, std::uint64_t seed,
                           const std::string& generator) {
  check_null_sizes(m, n, depth);
  if (sims < 100) {
    throw Error(ErrorCode::kInvalidArgument, "null tables need B >= 100");
  }
  const Sampler sampler = null_generator(generator);
  const auto cfg = SubsampleConfig::for_depth(depth);

  NullTable table;
  table.m = m;
  table.n = n;
  table.depth = depth;
  table.sims = sims;
  table.seed = seed;
  table.generator_tag = generator;
  table.stats.resize(static_cast<std::size_t>(sims));
  parallel_for(table.stats.size(), [&](std::size_t b) {
    Rng rng = replicate_rng(seed, b);
    std::vector<double> x, y;
    draw(sampler, rng, x, m);
    draw(sampler, rng, y, n);
    table.stats[b] = august_plus(x, y, cfg, simulation_ties(seed, b)).statistic;
  });
  std::sort(table.stats.begin(), table.stats.end());
  return table;
}

double p_value(double statistic, const NullTable& table) {
  if (table.stats.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "null table is empty");
  }
  const auto first = std::lower_bound(table.stats.begin(), table.stats.end(), statistic);
  const auto exceed = static_cast<double>(table.stats.end() - first);
  return (1.0 + exceed) / (static_cast<double>(table.stats.size()) + 1.0);
}

double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           int depth, std::int64_t permutations,
                           std::uint64_t seed, const TiePolicy& ties) {
  if (permutations < 100) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 100 permutations");
  }
  const auto cfg = SubsampleConfig::for_depth(depth);
  const double observed = august_plus(x, y, cfg, ties).statistic;
  std::vector<double> pooled(x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const std::size_t m = x.size();
  std::vector<char> exceeds(static_cast<std::size_t>(permutations), 0);
  parallel_for(exceeds.size(), [&](std::size_t p) {
    Rng rng = replicate_rng(seed, p);
    std::vector<double> shuffled = pooled;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::span<const double> all(shuffled);
    exceeds[p] = august_plus(all.first(m), all.subspan(m), cfg, ties).statistic >= observed;
  });
  std::int64_t count = 0;
  for (char e : exceeds) count += e;
  return static_cast<double>(1 + count) / static_cast<double>(permutations + 1);
}

AsymptoticConfig estimate_sigma(std::int64_t m, std::int64_t n, int depth,
                                std::int64_t reps, std::uint64_t seed) {
  check_null_sizes(m, n, depth);
  if (reps < 1000) {
    throw Error(ErrorCode::kInvalidArgument, "sigma estimation needs reps >= 1000");
  }
  const auto cfg = SubsampleConfig::for_depth(depth);
  const auto half = static_cast<Eigen::Index>(cfg.cell_count() - 1);
  const double root_n = std::sqrt(static_cast<double>(m + n));
  const Sampler sampler = null_generator("uniform");

  Eigen::MatrixXd draws(reps, 2 * half);
  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t b) {
    Rng rng = replicate_rng(seed, b);
    std::vector<double> x, y;
    draw(sampler, rng, x, m);
    draw(sampler, rng, y, n);
    const AugustResult res = august_plus(x, y, cfg, simulation_ties(seed, b));
    const auto row = static_cast<Eigen::Index>(b);
    for (Eigen::Index k = 0; k < half; ++k) {
      draws(row, k) = root_n * res.s_x[static_cast<std::size_t>(k)];
      draws(row, half + k) = root_n * res.s_y[static_cast<std::size_t>(k)];
    }
  });
  const Eigen::RowVectorXd mean = draws.colwise().mean();
  const Eigen::MatrixXd centered = draws.rowwise() - mean;
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(reps - 1);
  cov = 0.5 * (cov + cov.transpose()).eval();

  AsymptoticConfig out;
  out.lambda = static_cast<double>(m) / static_cast<double>(m + n);
  out.sigma = std::move(cov);
  out.calibration_n = m + n;
  out.calibration_reps = reps;
  out.depth = depth;
  return out;
}

double asymptotic_p_value(double statistic, std::int64_t m, std::int64_t n,
                          const AsymptoticConfig& cfg, std::int64_t draws,
                          std::uint64_t seed) {
  const double lambda = static_cast<double>(m) / static_cast<double>(m + n);
  if (std::abs(lambda - cfg.lambda) > 0.1) {
    throw Error(ErrorCode::kLambdaMismatch,
                "sample-size ratio " + std::to_string(lambda) +
                    " is too far from the calibrated ratio " +
                    std::to_string(cfg.lambda));
  }
  if (draws < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one draw");
  const Eigen::Index dim = cfg.sigma.rows();
  const Eigen::Index half = dim / 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cfg.sigma);
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd factor = eig.eigenvectors() * root.asDiagonal();
  const double total = static_cast<double>(m + n);

  std::vector<char> exceeds(static_cast<std::size_t>(draws), 0);
  parallel_for(exceeds.size(), [&](std::size_t i) {
    Rng rng = replicate_rng(seed, i);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd g(dim);
    for (Eigen::Index k = 0; k < dim; ++k) g(k) = normal(rng);
    const Eigen::VectorXd z = factor * g;
    const double simulated = -z.head(half).dot(z.tail(half)) / total;
    exceeds[i] = simulated >= statistic;
  });
  std::int64_t count = 0;
  for (char e : exceeds) count += e;
  return static_cast<double>(1 + count) / static_cast<double>(draws + 1);
}

GaussLegendreRule gauss_legendre(int nodes) {
  if (nodes < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(nodes));
  rule.weights.resize(static_cast<std::size_t>(nodes));
  const int half = (nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= nodes; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      derivative = nodes * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / derivative;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 1.0 / ((1.0 - z * z) * derivative * derivative);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(nodes - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - z);
    rule.nodes[hi] = 0.5 * (1.0 + z);
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

std::vector<double> binomial_cells(double cdf_value, const SubsampleConfig& cfg) {
  const std::int64_t r = cfg.subsample_size();
  const std::int64_t per_cell = cfg.counts_per_cell();
  const double f = std::clamp(cdf_value, 0.0, 1.0);
  std::vector<double> cells(cfg.cell_count(), 0.0);
  for (std::int64_t j = 0; j <= r; ++j) {
    const double term = std::exp(log_binomial(r, j)) *
                        std::pow(f, static_cast<double>(j)) *
                        std::pow(1.0 - f, static_cast<double>(r - j));
    cells[static_cast<std::size_t>(j / per_cell)] += term;
  }
  return cells;
}

namespace {

void check_handles(const AlternativeSpec& spec) {
  if (!spec.cdf_f || !spec.cdf_g || !spec.quantile_f || !spec.quantile_g) {
    throw Error(ErrorCode::kInvalidArgument, "alternative spec has empty handles");
  }
  // Probe each cdf along both laws' quantile grids.
  for (const auto* quantile : {&spec.quantile_f, &spec.quantile_g}) {
    double prev_f = -1.0, prev_g = -1.0;
    for (int i = 1; i < 200; ++i) {
      const double x = (*quantile)(i / 200.0);
      const double f = spec.cdf_f(x);
      const double g = spec.cdf_g(x);
      if (!(f >= 0.0 && f <= 1.0 && g >= 0.0 && g <= 1.0) || f < prev_f ||
          g < prev_g) {
        throw Error(ErrorCode::kInvalidArgument,
                    "cdf handles must be nondecreasing with range in [0, 1]");
      }
      prev_f = f;
      prev_g = g;
    }
  }
}

std::vector<double> mu_with_rule(const AlternativeSpec& spec,
                                 const SubsampleConfig& cfg,
                                 const GaussLegendreRule& rule) {
  const std::size_t cells = cfg.cell_count();
  std::vector<double> f_on_g(cells, 0.0), g_on_f(cells, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double w = rule.weights[i];
    const std::vector<double> a = binomial_cells(spec.cdf_f(spec.quantile_g(u)), cfg);
    const std::vector<double> b = binomial_cells(spec.cdf_g(spec.quantile_f(u)), cfg);
    for (std::size_t k = 0; k < cells; ++k) {
      f_on_g[k] += w * a[k];
      g_on_f[k] += w * b[k];
    }
  }
  fwht_inplace(f_on_g);
  fwht_inplace(g_on_f);
  std::vector<double> mu;
  mu.reserve(2 * (cells - 1));
  mu.insert(mu.end(), f_on_g.begin() + 1, f_on_g.end());
  mu.insert(mu.end(), g_on_f.begin() + 1, g_on_f.end());
  return mu;
}

}  // namespace

std::vector<double> alternative_mu(const AlternativeSpec& spec, int depth,
                                   int quadrature_nodes) {
  if (quadrature_nodes < 64) {
    throw Error(ErrorCode::kInvalidArgument, "quadrature needs at least 64 nodes");
  }
  check_handles(spec);
  const auto cfg = SubsampleConfig::for_depth(depth);
  const std::vector<double> coarse = mu_with_rule(spec, cfg, gauss_legendre(quadrature_nodes));
  std::vector<double> fine = mu_with_rule(spec, cfg, gauss_legendre(2 * quadrature_nodes));
  for (std::size_t i = 0; i < fine.size(); ++i) {
    if (std::abs(fine[i] - coarse[i]) > 1e-8) {
      throw Error(ErrorCode::kQuadratureFailure,
                  "doubling the quadrature nodes moved coordinate " +
                      std::to_string(i) + " by more than 1e-8");
    }
  }
  return fine;
}

double power_simulation(const Sampler& gen_x, const Sampler& gen_y,
                        const PowerConfig& cfg, const NullTable& table) {
  if (cfg.reps < 100) {
    throw Error(ErrorCode::kInvalidArgument, "power simulation needs reps >= 100");
  }
  if (table.m != cfg.m || table.n != cfg.n || table.depth != cfg.depth) {
    throw Error(ErrorCode::kInvalidArgument,
                "null table keys do not match the power configuration");
  }
  const auto sub = SubsampleConfig::for_depth(cfg.depth);
  std::vector<char> rejected(static_cast<std::size_t>(cfg.reps), 0);
  parallel_for(rejected.size(), [&](std::size_t rep) {
    Rng rng = replicate_rng(cfg.seed, rep);
    std::vector<double> x, y;
    draw(gen_x, rng, x, cfg.m);
    draw(gen_y, rng, y, cfg.n);
    const double s = august_plus(x, y, sub, simulation_ties(cfg.seed, rep)).statistic;
    rejected[rep] = p_value(s, table) <= cfg.alpha;
  });
  std::int64_t count = 0;
  for (char r : rejected) count += r;
  return static_cast<double>(count) / static_cast<double>(cfg.reps);
}

double baseline_power_simulation(const Sampler& gen_x, const Sampler& gen_y,
                                 const PowerConfig& cfg, BaselineTest baseline,
                                 std::int64_t permutations) {
  if (cfg.reps < 100) {
    throw Error(ErrorCode::kInvalidArgument, "power simulation needs reps >= 100");
  }
  std::vector<char> rejected(static_cast<std::size_t>(cfg.reps), 0);
  parallel_for(rejected.size(), [&](std::size_t rep) {
    Rng rng = replicate_rng(cfg.seed, rep);
    std::vector<double> x, y;
    draw(gen_x, rng, x, cfg.m);
    draw(gen_y, rng, y, cfg.n);
    const BaselineResult res = baseline_permutation_test(
        baseline, x, y, permutations, derive_seed(cfg.seed ^ 0xBA5E11FEULL, rep));
    rejected[rep] = res.p_value <= cfg.alpha;
  });
  std::int64_t count = 0;
  for (char r : rejected) count += r;
  return static_cast<double>(count) / static_cast<double>(cfg.reps);
}

}  // namespace august
