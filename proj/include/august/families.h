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

#ifndef AUGUST_FAMILIES_H_
#define AUGUST_FAMILIES_H_

// Named distribution families for null simulation and power studies. In
// every family X is drawn from the baseline law and Y from the law indexed
// by `parameter`.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "august/inference.h"

namespace august {

// Null-table generators: "uniform", "normal", "cauchy".
Sampler null_generator(const std::string& tag);

struct UnivariateFamily {
  std::string name;
  double parameter;
  Sampler x;
  Sampler y;
};

// null                N(0,1) vs N(0,1)
// normal-location     N(0,1) vs N(t,1)
// laplace-location    Laplace(0,1) vs Laplace(t,1)
// laplace-scale       Laplace(0,1) vs Laplace(0,t)
// beta-skew           Beta(2,2) vs Beta(2,2+t)
// gamma-skew          N(0,1) vs standardized Gamma with skewness t
// normal-mixture      N(0,1) vs (N(-t,s) + N(t,s))/2, s = sqrt(1 - t^2)
// Throws InvalidArgument for unknown names or parameters outside the family.
UnivariateFamily univariate_family(const std::string& name, double parameter);
const std::vector<std::string>& univariate_family_names();

using PointSampler = std::function<Eigen::VectorXd(Rng&)>;

struct BivariateFamily {
  std::string name;
  double parameter;
  PointSampler x;
  PointSampler y;
};

// bivariate-null        N2(0,I) vs N2(0,I)
// bivariate-location    N2(0,I) vs N2(t*1, I)
// bivariate-scale       N2(0,I) vs N2(0, t*I)
// bivariate-correlation N2(0,I) vs N2(0, [[1,t],[t,1]])
// bivariate-rotation    N2(0,diag(1,9)) vs R_t N2(0,diag(1,9))
// bivariate-lognormal   exp N2(0,I) vs exp N2(t*1, I)
// bivariate-bimodal     N2(0,I) vs (Z, B), B the normal mixture above
BivariateFamily bivariate_family(const std::string& name, double parameter);
const std::vector<std::string>& bivariate_family_names();

// Five-point parameter grid used by the power command when none is given.
std::vector<double> default_family_grid(const std::string& name);

// n draws from a point sampler as rows of a matrix.
Eigen::MatrixXd draw_points(const PointSampler& sampler, std::int64_t n, Rng& rng);

}  // namespace august

#endif  // AUGUST_FAMILIES_H_
