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

#ifndef AUGUST_INFERENCE_H_
#define AUGUST_INFERENCE_H_

// P-values and calibration. The statistic is distribution-free under the
// null, so a Monte-Carlo table simulated once from any continuous law
// serves every dataset with the same (m, n, d).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "august/august.h"
#include "august/baselines.h"
#include "august/parallel.h"

namespace august {

// Null generators: "uniform", "normal" or "cauchy".
inline constexpr const char* kDefaultGenerator = "uniform";

struct NullTable {
  std::vector<double> stats;  // ascending
  std::int64_t m = 0;
  std::int64_t n = 0;
  int depth = 0;
  std::int64_t sims = 0;
  std::uint64_t seed = 0;
  std::string generator_tag = kDefaultGenerator;

  bool operator==(const NullTable&) const = default;
};

// B statistics from august_plus on independent samples drawn from the named
// generator. Replicate b uses the stream derive_seed(seed, b).
// Throws SampleTooSmall, InvalidArgument (B < 100 or unknown generator).
NullTable build_null_table(std::int64_t m, std::int64_t n, int depth,
                           std::int64_t sims, std::uint64_t seed,
                           const std::string& generator = kDefaultGenerator);

// (1 + #{t >= statistic}) / (B + 1).
double p_value(double statistic, const NullTable& table);

// Permutation p-value for the univariate statistic (relabel the pooled
// sample, recompute wholesale).
double permutation_p_value(std::span<const double> x, std::span<const double> y,
                           int depth, std::int64_t permutations,
                           std::uint64_t seed, const TiePolicy& ties = {});

// --- Null-table cache files -------------------------------------------------
//
// Binary layout, little-endian throughout:
//   magic "AUGNULL\0" (8 bytes), u32 format version, u32 depth,
//   i64 m, i64 n, i64 B, u64 seed, u32 tag length, tag bytes,
//   then B f64 statistics in ascending order.
// A JSON sidecar "<file>.json" mirrors the header.

inline constexpr std::uint32_t kNullTableFormatVersion = 1;

std::string null_table_filename(std::int64_t m, std::int64_t n, int depth,
                                std::int64_t sims, std::uint64_t seed,
                                const std::string& generator);

// Atomic: writes to a temporary sibling and renames. Throws IOFailure.
void write_null_table(const NullTable& table, const std::filesystem::path& path);
// Throws IOFailure or CorruptFile.
NullTable read_null_table(const std::filesystem::path& path);
std::string null_table_header_json(const NullTable& table);

struct CachedTable {
  NullTable table;
  std::filesystem::path path;
  bool cache_hit;
};

// Loads the table for these keys from `dir`, building and persisting it on
// a miss.
CachedTable load_or_build_null_table(const std::filesystem::path& dir,
                                     std::int64_t m, std::int64_t n, int depth,
                                     std::int64_t sims, std::uint64_t seed,
                                     const std::string& generator = kDefaultGenerator);

// --- Asymptotic mode ---------------------------------------------------------

struct AsymptoticConfig {
  double lambda = 0.5;         // m / (m + n) at calibration
  Eigen::MatrixXd sigma;       // covariance of sqrt(N) (S_X, S_Y)
  std::int64_t calibration_n = 0;  // N = m + n used for calibration
  std::int64_t calibration_reps = 0;
  int depth = 0;
};

// Sample covariance (divisor reps - 1) of sqrt(N) (S_X, S_Y) over `reps`
// uniform null simulations at sizes (m, n). Throws InvalidArgument when
// reps < 1000.
AsymptoticConfig estimate_sigma(std::int64_t m, std::int64_t n, int depth,
                                std::int64_t reps, std::uint64_t seed);

// Draws Z ~ N(0, sigma), splits it into (z_x, z_y) and compares the
// statistic with -z_x . z_y / N by add-one exceedance. This is an
// approximation at finite N. Throws LambdaMismatch when m / (m + n) is more
// than 0.1 away from cfg.lambda.
double asymptotic_p_value(double statistic, std::int64_t m, std::int64_t n,
                          const AsymptoticConfig& cfg, std::int64_t draws,
                          std::uint64_t seed);

// --- Alternative mean ---------------------------------------------------------

// X ~ G and Y ~ F. Handles must be nondecreasing with range in [0, 1].
struct AlternativeSpec {
  std::function<double(double)> cdf_f;
  std::function<double(double)> cdf_g;
  std::function<double(double)> quantile_f;
  std::function<double(double)> quantile_g;
  std::string label;
};

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

// Nodes and weights on [0, 1] by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int nodes);

// Population limit of (S_X, S_Y): block tilde-Hadamard applied to
// p^{F:G} = int p^F(G^{-1}(u)) du and p^{G:F} = int p^G(F^{-1}(u)) du, with
// p_k^F the binomial cell probabilities for r = 2^(d+1) - 1.
// Throws InvalidArgument (nodes < 64 or handles failing a monotonicity
// probe) and QuadratureFailure when doubling the node count moves any
// coordinate by more than 1e-8.
std::vector<double> alternative_mu(const AlternativeSpec& spec, int depth,
                                   int quadrature_nodes = 64);

// Binomial cell probabilities p_k^F(x) given the value F(x).
std::vector<double> binomial_cells(double cdf_value, const SubsampleConfig& cfg);

// --- Power ---------------------------------------------------------------------

using Sampler = std::function<double(Rng&)>;

struct PowerConfig {
  std::int64_t m = 128;
  std::int64_t n = 128;
  int depth = 3;
  double alpha = 0.05;
  std::int64_t reps = 500;
  std::uint64_t seed = 0;
};

// Fraction of replicates with p_value <= alpha against `table`, X drawn
// from gen_x and Y from gen_y. Throws InvalidArgument when reps < 100 or the
// table keys do not match the config.
double power_simulation(const Sampler& gen_x, const Sampler& gen_y,
                        const PowerConfig& cfg, const NullTable& table);

// Same, for a baseline test with `permutations` relabelings per replicate.
double baseline_power_simulation(const Sampler& gen_x, const Sampler& gen_y,
                                 const PowerConfig& cfg,
                                 BaselineTest baseline,
                                 std::int64_t permutations);

}  // namespace august

#endif  // AUGUST_INFERENCE_H_
