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

#include "august/families.h"

#include <cmath>
#include <numbers>
#include <random>

#include "august/errors.h"

namespace august {
namespace {

double standard_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double laplace(Rng& rng, double location, double scale) {
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  double u = unif(rng);
  while (u == -0.5) u = unif(rng);
  const double sign = u < 0.0 ? -1.0 : 1.0;
  return location - scale * sign * std::log1p(-2.0 * std::abs(u));
}

double beta(Rng& rng, double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double u = ga(rng);
  const double v = gb(rng);
  return u / (u + v);
}

double normal_mixture(Rng& rng, double separation) {
  const double spread = std::sqrt(1.0 - separation * separation);
  std::bernoulli_distribution coin(0.5);
  const double center = coin(rng) ? separation : -separation;
  return center + spread * standard_normal(rng);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace

Sampler null_generator(const std::string& tag) {
  if (tag == "uniform") {
    return [](Rng& rng) {
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      return dist(rng);
    };
  }
  if (tag == "normal") return standard_normal;
  if (tag == "cauchy") {
    return [](Rng& rng) {
      std::cauchy_distribution<double> dist(0.0, 1.0);
      return dist(rng);
    };
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown null generator '" + tag + "'");
}

const std::vector<std::string>& univariate_family_names() {
  static const std::vector<std::string> names = {
      "null",          "normal-location", "laplace-location", "laplace-scale",
      "beta-skew",     "gamma-skew",      "normal-mixture"};
  return names;
}

UnivariateFamily univariate_family(const std::string& name, double t) {
  if (name == "null") {
    return {name, t, standard_normal, standard_normal};
  }
  if (name == "normal-location") {
    return {name, t, standard_normal,
            [t](Rng& rng) { return t + standard_normal(rng); }};
  }
  if (name == "laplace-location") {
    return {name, t, [](Rng& rng) { return laplace(rng, 0.0, 1.0); },
            [t](Rng& rng) { return laplace(rng, t, 1.0); }};
  }
  if (name == "laplace-scale") {
    require(t > 0.0, "laplace-scale needs a positive scale");
    return {name, t, [](Rng& rng) { return laplace(rng, 0.0, 1.0); },
            [t](Rng& rng) { return laplace(rng, 0.0, t); }};
  }
  if (name == "beta-skew") {
    require(t >= 0.0, "beta-skew needs a nonnegative parameter");
    return {name, t, [](Rng& rng) { return beta(rng, 2.0, 2.0); },
            [t](Rng& rng) { return beta(rng, 2.0, 2.0 + t); }};
  }
  if (name == "gamma-skew") {
    require(t >= 0.0, "gamma-skew needs a nonnegative skewness");
    if (t == 0.0) return {name, t, standard_normal, standard_normal};
    const double shape = 4.0 / (t * t);
    return {name, t, standard_normal, [shape](Rng& rng) {
              std::gamma_distribution<double> dist(shape, 1.0);
              return (dist(rng) - shape) / std::sqrt(shape);
            }};
  }
  if (name == "normal-mixture") {
    require(t >= 0.0 && t < 1.0, "normal-mixture separation must lie in [0, 1)");
    return {name, t, standard_normal,
            [t](Rng& rng) { return normal_mixture(rng, t); }};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown univariate family '" + name + "'");
}

const std::vector<std::string>& bivariate_family_names() {
  static const std::vector<std::string> names = {
      "bivariate-null",        "bivariate-location", "bivariate-scale",
      "bivariate-correlation", "bivariate-rotation", "bivariate-lognormal",
      "bivariate-bimodal"};
  return names;
}

BivariateFamily bivariate_family(const std::string& name, double t) {
  auto gaussian = [](Rng& rng) {
    Eigen::VectorXd v(2);
    v << standard_normal(rng), standard_normal(rng);
    return v;
  };
  if (name == "bivariate-null") return {name, t, gaussian, gaussian};
  if (name == "bivariate-location") {
    return {name, t, gaussian, [gaussian, t](Rng& rng) {
              Eigen::VectorXd v = gaussian(rng);
              return Eigen::VectorXd(v.array() + t);
            }};
  }
  if (name == "bivariate-scale") {
    require(t > 0.0, "bivariate-scale needs a positive variance scale");
    const double sd = std::sqrt(t);
    return {name, t, gaussian, [gaussian, sd](Rng& rng) {
              return Eigen::VectorXd(sd * gaussian(rng));
            }};
  }
  if (name == "bivariate-correlation") {
    require(t > -1.0 && t < 1.0, "correlation must lie in (-1, 1)");
    const double c = std::sqrt(1.0 - t * t);
    return {name, t, gaussian, [gaussian, t, c](Rng& rng) {
              const Eigen::VectorXd z = gaussian(rng);
              Eigen::VectorXd v(2);
              v << z(0), t * z(0) + c * z(1);
              return v;
            }};
  }
  if (name == "bivariate-rotation") {
    auto stretched = [gaussian](Rng& rng) {
      Eigen::VectorXd v = gaussian(rng);
      v(1) *= 3.0;
      return v;
    };
    Eigen::Matrix2d rot;
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return {name, t, stretched, [stretched, rot](Rng& rng) {
              return Eigen::VectorXd(rot * stretched(rng));
            }};
  }
  if (name == "bivariate-lognormal") {
    return {name, t,
            [gaussian](Rng& rng) { return Eigen::VectorXd(gaussian(rng).array().exp()); },
            [gaussian, t](Rng& rng) {
              return Eigen::VectorXd((gaussian(rng).array() + t).exp());
            }};
  }
  if (name == "bivariate-bimodal") {
    require(t >= 0.0 && t < 1.0, "bimodal separation must lie in [0, 1)");
    return {name, t, gaussian, [t](Rng& rng) {
              Eigen::VectorXd v(2);
              v(0) = standard_normal(rng);
              v(1) = normal_mixture(rng, t);
              return v;
            }};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown bivariate family '" + name + "'");
}

std::vector<double> default_family_grid(const std::string& name) {
  if (name == "null" || name == "bivariate-null") return {0.0};
  if (name == "normal-location" || name == "laplace-location") {
    return {0.0, 0.1, 0.2, 0.3, 0.4};
  }
  if (name == "laplace-scale") return {1.0, 1.15, 1.3, 1.45, 1.6};
  if (name == "beta-skew") return {0.0, 0.25, 0.5, 0.75, 1.0};
  if (name == "gamma-skew") return {0.0, 0.25, 0.5, 0.75, 1.0};
  if (name == "normal-mixture") return {0.0, 0.6, 0.75, 0.85, 0.95};
  if (name == "bivariate-location") return {0.0, 0.1, 0.2, 0.3, 0.4};
  if (name == "bivariate-scale") return {1.0, 1.25, 1.5, 1.75, 2.0};
  if (name == "bivariate-correlation") return {0.0, 0.2, 0.4, 0.6, 0.8};
  if (name == "bivariate-rotation") {
    return {0.0, std::numbers::pi / 16, std::numbers::pi / 8,
            3 * std::numbers::pi / 16, std::numbers::pi / 4};
  }
  if (name == "bivariate-lognormal") return {0.0, 0.1, 0.2, 0.3, 0.4};
  if (name == "bivariate-bimodal") return {0.0, 0.6, 0.75, 0.85, 0.95};
  throw Error(ErrorCode::kInvalidArgument, "unknown family '" + name + "'");
}

Eigen::MatrixXd draw_points(const PointSampler& sampler, std::int64_t n, Rng& rng) {
  require(n >= 1, "need at least one point");
  Eigen::VectorXd first = sampler(rng);
  Eigen::MatrixXd out(n, first.size());
  out.row(0) = first.transpose();
  for (std::int64_t i = 1; i < n; ++i) out.row(i) = sampler(rng).transpose();
  return out;
}

}  // namespace august
