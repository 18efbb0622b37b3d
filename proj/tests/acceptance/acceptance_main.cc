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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Sizes and tolerances are the full-scale targets.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "august/august.h"
#include "august/baselines.h"
#include "august/families.h"
#include "august/hadamard.h"
#include "august/hypergeom.h"
#include "august/inference.h"
#include "august/interpret.h"
#include "august/multivariate.h"

namespace {

using namespace august;
namespace fs = std::filesystem;

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* spec, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, a);
  return buf;
}

std::vector<double> normals(std::size_t n, Rng& rng, double mean = 0.0) {
  std::normal_distribution<double> dist(mean, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = dist(rng);
  return v;
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  return ks_statistic(a, b);
}

Verdict worked_examples() {
  double worst = 0.0;
  auto check = [&](std::vector<double> p, int d, const std::vector<double>& want) {
    const auto s = symmetry_statistics(CellProbabilities(std::move(p), d));
    for (std::size_t i = 0; i < want.size(); ++i) worst = std::max(worst, std::abs(s[i] - want[i]));
  };
  check({0.35, 0.40, 0.15, 0.10}, 2, {0.00, 0.50, -0.10});
  check({0.10, 0.10, 0.14, 0.15, 0.13, 0.12, 0.13, 0.13}, 3,
        {0.00, -0.10, 0.02, -0.02, -0.02, -0.08, 0.00});
  return {worst <= 1e-12, "max abs error " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

Verdict exhaustive_oracle() {
  Rng rng(20261014);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const auto cfg = SubsampleConfig::for_depth(d);
    const std::size_t r = static_cast<std::size_t>(cfg.subsample_size());
    const std::size_t n = r + rng() % (12 - r + 1);
    const auto y = normals(n, rng);
    const double x = std::normal_distribution<double>(0.0, 1.3)(rng);
    const auto a = exhaustive_subsample_cdf(x, y, cfg);
    const auto b = augmented_cdf(x, y, cfg);
    for (std::size_t c = 0; c < cfg.cell_count(); ++c) worst = std::max(worst, std::abs(a[c] - b[c]));
  }
  return {worst <= 1e-12, "500 instances, max abs diff " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

Verdict bootstrap_convergence() {
  Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const int d = 1 + i % 3;
    const auto cfg = SubsampleConfig::for_depth(d);
    const auto y = normals(static_cast<std::size_t>(cfg.subsample_size()) + 10 + 5 * i, rng);
    const double x = std::normal_distribution<double>(0.0, 1.0)(rng);
    const auto exact = augmented_cdf(x, y, cfg);
    const auto boot = bootstrap_augmented_cdf(x, y, cfg, 100000, 1000 + static_cast<std::uint64_t>(i));
    for (std::size_t c = 0; c < cfg.cell_count(); ++c) {
      worst = std::max(worst, std::abs(exact[c] - boot[c]));
    }
  }
  return {worst < 0.01, "20 instances at K = 1e5, max-norm error " + fmt("%.4g", worst) + " (tol 0.01)"};
}

Verdict algorithm_equivalence() {
  Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int d = 1 + i % 5;
    // Sizes below r = 2^(d+1) - 1 are outside the statistic's domain.
    const std::uint64_t lo = std::max<std::uint64_t>(20, (2u << d) - 1);
    const std::size_t m = lo + rng() % (500 - lo + 1);
    const std::size_t n = lo + rng() % (500 - lo + 1);
    const auto x = normals(m, rng);
    const auto y = normals(n, rng, 0.25 * static_cast<double>(rng() % 3));
    const auto a = august::august(x, y, d);
    const auto b = august_plus(x, y, d);
    worst = std::max(worst, std::abs(a.statistic - b.statistic));
    for (std::size_t k = 0; k < a.s_x.size(); ++k) {
      worst = std::max({worst, std::abs(a.s_x[k] - b.s_x[k]), std::abs(a.s_y[k] - b.s_y[k])});
    }
    for (std::size_t k = 0; k < a.p_x.size(); ++k) {
      worst = std::max({worst, std::abs(a.p_x[k] - b.p_x[k]), std::abs(a.p_y[k] - b.p_y[k])});
    }
  }
  return {worst <= 1e-12, "1000 instances, max abs diff over all fields " + fmt("%.3g", worst) + " (tol 1e-12)"};
}

Verdict separated_law() {
  Rng rng(13);
  int exact = 0;
  double worst_cos = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 5;
    const std::size_t r = (std::size_t{2} << d) - 1;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(r + rng() % 100), y(r + rng() % 100);
    for (auto& v : x) v = u(rng);
    for (auto& v : y) v = 1.5 + u(rng);
    const auto res = (i % 2 == 0) ? august_plus(x, y, d) : august_plus(y, x, d);
    exact += res.statistic == 1.0;
    worst_cos = std::max(worst_cos, std::abs(cos_angle(res) + 1.0 / ((1 << d) - 1)));
  }
  return {exact == 100 && worst_cos <= 1e-12,
          std::to_string(exact) + "/100 with S == 1 exactly, max |cos + 1/(2^d-1)| " + fmt("%.3g", worst_cos)};
}

Verdict distribution_freeness() {
  const auto u = build_null_table(128, 128, 3, 10000, 101, "uniform");
  const auto c = build_null_table(128, 128, 3, 10000, 202, "cauchy");
  const auto g = build_null_table(128, 128, 3, 10000, 303, "normal");
  const double uc = ks_distance(u.stats, c.stats);
  const double ug = ks_distance(u.stats, g.stats);
  return {uc < 0.02, "KS(uniform, cauchy) = " + fmt("%.4f", uc) + " (tol 0.02); KS(uniform, normal) = " +
                         fmt("%.4f", ug)};
}

Verdict level_calibration() {
  const auto table = build_null_table(128, 128, 3, 10000, 404);
  const Sampler normal = null_generator("normal");
  int rejected = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Rng rng = replicate_rng(505, static_cast<std::uint64_t>(t));
    std::vector<double> x(128), y(128);
    for (auto& v : x) v = normal(rng);
    for (auto& v : y) v = normal(rng);
    const TiePolicy ties{TieMode::kJitter, 0.0, static_cast<std::uint64_t>(t)};
    rejected += p_value(august_plus(x, y, 3, ties).statistic, table) <= 0.05;
  }
  const double uni = rejected / static_cast<double>(trials);

  const auto fam = bivariate_family("bivariate-null", 0.0);
  int multi_rejected = 0;
  const int multi_trials = 2000;
  for (int t = 0; t < multi_trials; ++t) {
    Rng rng = replicate_rng(606, static_cast<std::uint64_t>(t));
    const auto x = draw_points(fam.x, 128, rng);
    const auto y = draw_points(fam.y, 128, rng);
    multi_rejected += multivariate_permutation_p_value(x, y, 2, 199, 707 + static_cast<std::uint64_t>(t)) <= 0.05;
  }
  const double multi = multi_rejected / static_cast<double>(multi_trials);
  return {std::abs(uni - 0.05) <= 0.01 && std::abs(multi - 0.05) <= 0.015,
          "univariate " + fmt("%.4f", uni) + " over 1e4 trials (0.05 +- 0.01); multivariate " +
              fmt("%.4f", multi) + " over 2000 trials (0.05 +- 0.015)"};
}

double skewness(const std::vector<double>& v, double* excess_kurtosis) {
  double mean = 0.0;
  for (double e : v) mean += e;
  mean /= static_cast<double>(v.size());
  double m2 = 0, m3 = 0, m4 = 0;
  for (double e : v) {
    const double d = e - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(v.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  *excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return m3 / std::pow(m2, 1.5);
}

Verdict asymptotic_normality() {
  const int reps = 10000;
  const std::size_t m = 2000, n = 2000;
  const double root_n = std::sqrt(4000.0);
  std::vector<std::vector<double>> coords(6, std::vector<double>(reps));
  const Sampler unif = null_generator("uniform");
  for (int b = 0; b < reps; ++b) {
    Rng rng = replicate_rng(808, static_cast<std::uint64_t>(b));
    std::vector<double> x(m), y(n);
    for (auto& v : x) v = unif(rng);
    for (auto& v : y) v = unif(rng);
    const auto res = august_plus(x, y, 2, TiePolicy{TieMode::kJitter, 0.0, 1});
    for (std::size_t k = 0; k < 3; ++k) {
      coords[k][static_cast<std::size_t>(b)] = root_n * res.s_x[k];
      coords[3 + k][static_cast<std::size_t>(b)] = root_n * res.s_y[k];
    }
  }
  double worst_skew = 0.0, worst_kurt = 0.0;
  for (const auto& c : coords) {
    double kurt = 0.0;
    worst_skew = std::max(worst_skew, std::abs(skewness(c, &kurt)));
    worst_kurt = std::max(worst_kurt, std::abs(kurt));
  }
  return {worst_skew < 0.15 && worst_kurt < 0.3,
          "max |skewness| " + fmt("%.4f", worst_skew) + " (tol 0.15), max |excess kurtosis| " +
              fmt("%.4f", worst_kurt) + " (tol 0.3)"};
}

AlternativeSpec normal_pair(double g_mean, double f_mean) {
  const boost::math::normal g(g_mean, 1.0), f(f_mean, 1.0);
  return AlternativeSpec{[f](double x) { return boost::math::cdf(f, x); },
                         [g](double x) { return boost::math::cdf(g, x); },
                         [f](double u) { return boost::math::quantile(f, u); },
                         [g](double u) { return boost::math::quantile(g, u); },
                         "normal"};
}

Verdict alternative_mean() {
  const int d = 3;
  double null_worst = 0.0;
  for (double v : alternative_mu(normal_pair(0.0, 0.0), d)) null_worst = std::max(null_worst, std::abs(v));

  // X ~ G = N(0, 1), Y ~ F = N(0.3, 1).
  const auto mu = alternative_mu(normal_pair(0.0, 0.3), d);
  const int reps = 2000;
  const std::size_t dim = mu.size();
  std::vector<double> sum(dim, 0.0), sum2(dim, 0.0);
  for (int b = 0; b < reps; ++b) {
    Rng rng = replicate_rng(909, static_cast<std::uint64_t>(b));
    const auto x = normals(5000, rng, 0.0);
    const auto y = normals(5000, rng, 0.3);
    const auto res = august_plus(x, y, d, TiePolicy{TieMode::kJitter, 0.0, 2});
    for (std::size_t k = 0; k < dim; ++k) {
      const double v = k < dim / 2 ? res.s_x[k] : res.s_y[k - dim / 2];
      sum[k] += v;
      sum2[k] += v * v;
    }
  }
  double worst_z = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double mean = sum[k] / reps;
    const double var = (sum2[k] - reps * mean * mean) / (reps - 1);
    const double se = std::sqrt(var / reps);
    worst_z = std::max(worst_z, std::abs(mean - mu[k]) / se);
  }
  return {null_worst <= 1e-10 && worst_z <= 3.0,
          "F = G max |mu| " + fmt("%.3g", null_worst) + " (tol 1e-10); N(0,1) vs N(0.3,1) max |mean - mu| / SE " +
              fmt("%.3f", worst_z) + " over " + std::to_string(dim) + " coordinates (tol 3)"};
}

Verdict power_ordering() {
  const auto table = build_null_table(128, 128, 3, 10000, 1111);
  const std::int64_t reps = 1000;
  std::string detail = "normal-location power";
  std::vector<double> powers;
  bool isotonic = true;
  for (double t : {0.0, 0.1, 0.2, 0.3, 0.4}) {
    const auto fam = univariate_family("normal-location", t);
    powers.push_back(power_simulation(fam.x, fam.y, PowerConfig{128, 128, 3, 0.05, reps, 1212}, table));
    detail += " " + fmt("%.3f", powers.back());
  }
  for (std::size_t i = 1; i < powers.size(); ++i) {
    const double se = std::sqrt((powers[i] * (1 - powers[i]) + powers[i - 1] * (1 - powers[i - 1])) / reps);
    isotonic = isotonic && powers[i] - powers[i - 1] > -2.0 * se;
  }
  isotonic = isotonic && powers.back() > powers.front();

  const auto mix = univariate_family("normal-mixture", 0.95);
  const PowerConfig cfg{128, 128, 3, 0.05, 500, 1313};
  const double aug = power_simulation(mix.x, mix.y, cfg, table);
  const double ks = baseline_power_simulation(mix.x, mix.y, cfg, BaselineTest::kKolmogorovSmirnov, 199);
  detail += "; normal-mixture(0.95) AUGUST " + fmt("%.3f", aug) + " vs KS " + fmt("%.3f", ks) + " (500 reps)";
  return {isotonic && aug > ks, detail};
}

Verdict runtime_scaling() {
  std::vector<std::pair<double, double>> pts;
  std::string detail = "seconds";
  for (std::size_t total : {10'000u, 100'000u, 1'000'000u}) {
    Rng rng(1414);
    const auto x = normals(total / 2, rng);
    const auto y = normals(total / 2, rng, 0.1);
    double best = INFINITY;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      volatile double s = august_plus(x, y, 3).statistic;
      (void)s;
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    pts.emplace_back(std::log(static_cast<double>(total)), std::log(best));
    detail += " N=" + std::to_string(total) + ":" + fmt("%.4f", best);
  }
  double mx = 0, my = 0;
  for (auto [a, b] : pts) {
    mx += a / 3;
    my += b / 3;
  }
  double sxy = 0, sxx = 0;
  for (auto [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  const double slope = sxy / sxx;
  const double largest = std::exp(pts.back().second);
  return {slope >= 0.9 && slope <= 1.3 && largest < 60.0,
          "log-log slope " + fmt("%.3f", slope) + " (range [0.9, 1.3]); " + detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict serialization() {
  const fs::path dir = fs::temp_directory_path() / "august_acceptance_io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    Rng rng(1515);
    const auto x = normals(200, rng, 0.7);
    const auto y = normals(200, rng);
    const auto res = august_plus(x, y, 3);
    const auto data = make_plot_data(region_report(res, x, y, Reference::kY, 3), y, "Y", 25);
    const fs::path plot = dir / ("plot" + std::to_string(run) + ".json");
    emit_plot_data(data, plot);
    ok = ok && read_plot_data(plot) == data;

    const auto table = build_null_table(64, 80, 2, 2000, 1616, "normal");
    const fs::path bin = dir / ("table" + std::to_string(run) + ".bin");
    write_null_table(table, bin);
    ok = ok && read_null_table(bin) == table;
  }
  const bool stable = slurp(dir / "plot0.json") == slurp(dir / "plot1.json") &&
                      slurp(dir / "table0.bin") == slurp(dir / "table1.bin") &&
                      slurp(dir / "table0.bin.json") == slurp(dir / "table1.bin.json");
  fs::remove_all(dir);
  return {ok && stable, std::string("round trip ") + (ok ? "equal" : "DIFFERS") + ", repeated runs " +
                            (stable ? "byte-identical" : "NOT byte-identical")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked-example exactness", worked_examples},
      {2, "exhaustive-subsample oracle equivalence", exhaustive_oracle},
      {3, "bootstrap convergence", bootstrap_convergence},
      {4, "august_plus == august", algorithm_equivalence},
      {5, "separated-samples law", separated_law},
      {6, "distribution-freeness of null tables", distribution_freeness},
      {7, "level calibration", level_calibration},
      {8, "asymptotic normality proxy", asymptotic_normality},
      {9, "alternative mean", alternative_mean},
      {10, "power ordering", power_ordering},
      {11, "runtime scaling", runtime_scaling},
      {12, "serialization round-trip", serialization},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !v.pass;
    std::printf("%s criterion %2d  %-42s %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
