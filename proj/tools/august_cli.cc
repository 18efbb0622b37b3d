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

// Command-line front end. Every command prints a JSON report (or CSV for
// power and bench) and exits with 0 on success, 2 for usage errors, 3 for
// unparseable input, 4 for violated preconditions and 5 for I/O failures.
// Failures also write {"error": {...}} to stderr.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "august/august.h"
#include "august/baselines.h"
#include "august/errors.h"
#include "august/families.h"
#include "august/inference.h"
#include "august/interpret.h"
#include "august/multivariate.h"
#include "dataset.h"

namespace {

using nlohmann::ordered_json;
using namespace august;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitPrecondition = 4;
constexpr int kExitIo = 5;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseFailure:
      return kExitParse;
    case ErrorCode::kIOFailure:
    case ErrorCode::kCorruptFile:
      return kExitIo;
    default:
      return kExitPrecondition;
  }
}

void print_error(const std::string& code, const std::string& message, int exit_code,
                 const august::cli::DatasetError* where = nullptr) {
  ordered_json err;
  err["code"] = code;
  err["message"] = message;
  err["exit_code"] = exit_code;
  if (where != nullptr) {
    err["row"] = where->row();
    err["column"] = where->column();
  }
  std::cerr << ordered_json{{"error", err}}.dump() << "\n";
}

struct Options {
  int depth = 0;  // 0 selects the command default
  double alpha = 0.05;
  int bonferroni = 1;
  std::string pvalue_method = "montecarlo";
  std::int64_t sims = 10000;
  std::int64_t permutations = 999;
  std::uint64_t seed = 0;
  std::string ties = "error";
  std::string reference = "y";
  int top_k = 2;
  std::string cache_dir;
  std::string report;
  std::string data;
  std::string data_x;
  std::string data_y;
  double ridge = 0.0;
  int bins = 20;
  std::string output;
  bool multivariate = false;
};

void add_data_options(CLI::App* cmd, Options& o, bool two_file) {
  cmd->add_option("--data", o.data, "Headerless CSV with rows value,label");
  if (two_file) {
    cmd->add_option("--data-x", o.data_x, "Single-column file holding sample X");
    cmd->add_option("--data-y", o.data_y, "Single-column file holding sample Y");
  }
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--depth", o.depth, "Depth d (default 3, or 2 for multivariate data)");
  cmd->add_option("--alpha", o.alpha, "Significance level");
  cmd->add_option("--bonferroni", o.bonferroni, "Divide alpha by K for K simultaneous tests");
  cmd->add_option("--seed", o.seed, "Seed for every random stream");
  cmd->add_option("--ties", o.ties, "Tie handling")->check(CLI::IsMember({"error", "jitter"}));
  cmd->add_option("--report", o.report, "Also write the JSON report to PATH");
}

TiePolicy tie_policy(const Options& o) {
  return TiePolicy{o.ties == "jitter" ? TieMode::kJitter : TieMode::kError, 0.0, o.seed};
}

void validate_run(const Options& o) {
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (o.bonferroni < 1) throw UsageError("--bonferroni must be >= 1");
  if (o.sims < 100) throw UsageError("--sims must be >= 100");
  if (o.permutations < 100) throw UsageError("--permutations must be >= 100");
}

std::string cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv("AUGUST_CACHE_DIR"); env != nullptr) return env;
  return "";
}

cli::UnivariateData load_univariate(const Options& o) {
  if (!o.data.empty()) {
    if (!o.data_x.empty() || !o.data_y.empty()) {
      throw UsageError("use either --data or --data-x/--data-y");
    }
    return cli::load_two_column(o.data);
  }
  if (o.data_x.empty() || o.data_y.empty()) {
    throw UsageError("input required: --data FILE or both --data-x and --data-y");
  }
  return cli::load_two_files(o.data_x, o.data_y);
}

void emit_report(const ordered_json& report, const Options& o) {
  const std::string text = report.dump(2) + "\n";
  if (!o.report.empty()) {
    std::ofstream out(o.report, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIOFailure, "cannot write report " + o.report);
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kIOFailure, "failed writing report " + o.report);
  }
  std::cout << text;
}

ordered_json vec(std::span<const double> v) { return ordered_json(std::vector<double>(v.begin(), v.end())); }

ordered_json config_echo(const Options& o, int depth, double alpha_eff) {
  ordered_json c;
  c["depth"] = depth;
  c["alpha"] = o.alpha;
  c["bonferroni"] = o.bonferroni;
  c["alpha_effective"] = alpha_eff;
  c["pvalue_method"] = o.pvalue_method;
  c["sims"] = o.sims;
  c["permutations"] = o.permutations;
  c["seed"] = o.seed;
  c["ties"] = o.ties;
  c["cache_dir"] = cache_dir(o);
  if (!o.data.empty()) c["data"] = o.data;
  if (!o.data_x.empty()) c["data_x"] = o.data_x;
  if (!o.data_y.empty()) c["data_y"] = o.data_y;
  return c;
}

std::string decision(double p, double alpha) { return p <= alpha ? "reject" : "fail to reject"; }

// --- test -------------------------------------------------------------------

int cmd_test(const Options& o) {
  validate_run(o);
  const int depth = o.depth == 0 ? 3 : o.depth;
  const double alpha = o.alpha / o.bonferroni;
  const auto data = load_univariate(o);
  const AugustResult res = august_plus(data.x, data.y, depth, tie_policy(o));
  const auto m = static_cast<std::int64_t>(data.x.size());
  const auto n = static_cast<std::int64_t>(data.y.size());

  ordered_json report;
  report["command"] = "test";
  report["statistic"] = res.statistic;
  double p = 1.0;
  ordered_json extra;
  if (o.pvalue_method == "montecarlo") {
    const std::string dir = cache_dir(o);
    if (dir.empty()) {
      p = p_value(res.statistic, build_null_table(m, n, depth, o.sims, o.seed));
      extra["null_table"] = {{"path", nullptr}, {"cache_hit", false}};
    } else {
      const CachedTable cached = load_or_build_null_table(dir, m, n, depth, o.sims, o.seed);
      p = p_value(res.statistic, cached.table);
      extra["null_table"] = {{"path", cached.path.string()}, {"cache_hit", cached.cache_hit}};
    }
  } else if (o.pvalue_method == "permutation") {
    p = permutation_p_value(data.x, data.y, depth, o.permutations, o.seed, tie_policy(o));
  } else {
    // Calibrate at the observed size ratio, capped at N = 2000.
    std::int64_t cm = m, cn = n;
    if (m + n > 2000) {
      cm = std::max<std::int64_t>(
          static_cast<std::int64_t>(std::llround(2000.0 * static_cast<double>(m) / (m + n))),
          (std::int64_t{1} << (depth + 1)) - 1);
      cn = 2000 - cm;
    }
    const AsymptoticConfig cfg = estimate_sigma(cm, cn, depth, std::max<std::int64_t>(o.sims, 1000), o.seed);
    p = asymptotic_p_value(res.statistic, m, n, cfg, o.sims, derive_seed(o.seed, 1));
    extra["approximate"] = true;
    extra["calibration"] = {{"m", cm}, {"n", cn}, {"reps", cfg.calibration_reps}};
  }
  report["p_value"] = p;
  report["decision"] = decision(p, alpha);
  report["s_x"] = vec(res.s_x.stats);
  report["s_y"] = vec(res.s_y.stats);
  report["p_x"] = vec(res.p_x.values());
  report["p_y"] = vec(res.p_y.values());
  report["m"] = m;
  report["n"] = n;
  report["labels"] = {{"x", data.label_x}, {"y", data.label_y}};
  report["ties"] = res.ties == TieResolution::kJittered ? "jittered" : "none";
  for (auto& [k, v] : extra.items()) report[k] = v;
  report["config"] = config_echo(o, depth, alpha);
  emit_report(report, o);
  return kExitOk;
}

// --- test-multi ---------------------------------------------------------------

ordered_json branch_json(const AugustResult& r, const MahalanobisModel& model) {
  ordered_json b;
  b["statistic"] = r.statistic;
  b["s_x"] = vec(r.s_x.stats);
  b["s_y"] = vec(r.s_y.stats);
  b["mean"] = vec(std::span<const double>(model.mean.data(), static_cast<std::size_t>(model.mean.size())));
  ordered_json cov = ordered_json::array();
  for (Eigen::Index i = 0; i < model.covariance.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(model.covariance.cols()));
    for (Eigen::Index j = 0; j < model.covariance.cols(); ++j) row[static_cast<std::size_t>(j)] = model.covariance(i, j);
    cov.push_back(row);
  }
  b["covariance"] = cov;
  return b;
}

int cmd_test_multi(Options o) {
  o.pvalue_method = "permutation";
  validate_run(o);
  if (o.data.empty()) throw UsageError("--data FILE is required");
  const int depth = o.depth == 0 ? kDefaultMultivariateDepth : o.depth;
  const double alpha = o.alpha / o.bonferroni;
  const auto data = cli::load_multivariate(o.data);
  const MultiResult res =
      multivariate_test(data.x, data.y, depth, o.permutations, o.seed, tie_policy(o), o.ridge);

  ordered_json report;
  report["command"] = "test-multi";
  report["statistic"] = res.statistic;
  report["p_value"] = res.p_value;
  report["decision"] = decision(res.p_value, alpha);
  report["attained_by"] = res.attained_by == MultiBranch::kX ? "x" : "y";
  report["branches"] = {{"x", branch_json(res.branch_x, res.model_x)},
                        {"y", branch_json(res.branch_y, res.model_y)}};
  report["m"] = data.x.rows();
  report["n"] = data.y.rows();
  report["dimension"] = data.x.cols();
  report["labels"] = {{"x", data.label_x}, {"y", data.label_y}};
  ordered_json cfg = config_echo(o, depth, alpha);
  cfg.erase("sims");
  cfg.erase("cache_dir");
  cfg["ridge"] = o.ridge;
  report["config"] = cfg;
  emit_report(report, o);
  return kExitOk;
}

// --- interpret ----------------------------------------------------------------

int cmd_interpret(const Options& o) {
  if (o.output.empty()) throw UsageError("--output PATH is required");
  if (o.top_k < 0) throw UsageError("--top-k must be >= 0");
  if (o.bins < 1) throw UsageError("--bins must be >= 1");
  const Reference ref = o.reference == "x" ? Reference::kX : Reference::kY;

  std::optional<AugustResult> result;
  std::vector<double> xs, ys;
  SampleKind kind = SampleKind::kUnivariate;
  ordered_json summary;
  summary["command"] = "interpret";
  int depth = 0;
  if (o.multivariate) {
    if (o.data.empty()) throw UsageError("--data FILE is required");
    depth = o.depth == 0 ? kDefaultMultivariateDepth : o.depth;
    const auto data = cli::load_multivariate(o.data);
    MultiResult multi = multivariate_branches(data.x, data.y, depth, tie_policy(o), o.ridge);
    const bool use_x = multi.attained_by == MultiBranch::kX;
    const MahalanobisModel& model = use_x ? multi.model_x : multi.model_y;
    xs = mahalanobis_transform(data.x, model);
    ys = mahalanobis_transform(data.y, model);
    result = use_x ? multi.branch_x : multi.branch_y;
    if (result->ties == TieResolution::kJittered) {
      const ResolvedSamples r = resolve_ties(xs, ys, tie_policy(o));
      xs = r.x;
      ys = r.y;
    }
    kind = SampleKind::kMahalanobis;
    summary["attained_by"] = use_x ? "x" : "y";
  } else {
    depth = o.depth == 0 ? 3 : o.depth;
    const auto data = load_univariate(o);
    const ResolvedSamples r = resolve_ties(data.x, data.y, tie_policy(o));
    xs = r.x;
    ys = r.y;
    result = august_plus(xs, ys, depth);
    result->ties = r.ties;
  }
  const auto reports = region_report(*result, xs, ys, ref, o.top_k);
  const PlotData plot = make_plot_data(reports, ref == Reference::kY ? ys : xs,
                                       std::string(reference_name(ref)), o.bins);
  emit_plot_data(plot, o.output);

  summary["statistic"] = result->statistic;
  summary["reference"] = reference_name(ref);
  summary["plot_data"] = o.output;
  ordered_json rows = ordered_json::array();
  for (const auto& rep : reports) {
    rows.push_back({{"rank", rep.rank},
                    {"row_index", rep.row_index},
                    {"label", row_label(depth, rep.row_index, kind)},
                    {"value", rep.statistic_value},
                    {"shaded", rep.shaded}});
  }
  summary["rows"] = rows;
  summary["ties"] = result->ties == TieResolution::kJittered ? "jittered" : "none";
  emit_report(summary, o);
  return kExitOk;
}

// --- null-table ---------------------------------------------------------------

ordered_json table_summary(const NullTable& t) {
  ordered_json s = ordered_json::parse(null_table_header_json(t));
  ordered_json q;
  for (double level : {0.5, 0.9, 0.95, 0.99}) {
    const auto idx = std::min(t.stats.size() - 1,
                              static_cast<std::size_t>(std::ceil(level * static_cast<double>(t.stats.size()))) - 1);
    char key[16];
    std::snprintf(key, sizeof key, "%.2f", level);
    q[key] = t.stats[idx];
  }
  s["quantiles"] = q;
  return s;
}

struct TableOptions {
  std::int64_t m = 0;
  std::int64_t n = 0;
  int depth = 3;
  std::int64_t sims = 10000;
  std::uint64_t seed = 0;
  std::string generator = kDefaultGenerator;
  std::string cache_dir;
  std::string file;
};

int cmd_null_table_build(const TableOptions& t) {
  Options tmp;
  tmp.cache_dir = t.cache_dir;
  const std::string dir = cache_dir(tmp);
  if (dir.empty()) throw UsageError("--cache-dir or AUGUST_CACHE_DIR is required");
  const CachedTable cached = load_or_build_null_table(dir, t.m, t.n, t.depth, t.sims, t.seed, t.generator);
  ordered_json out;
  out["command"] = "null-table build";
  out["path"] = cached.path.string();
  out["cache_hit"] = cached.cache_hit;
  const ordered_json summary = table_summary(cached.table);
  for (const auto& [k, v] : summary.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_null_table_inspect(const TableOptions& t) {
  const NullTable table = read_null_table(t.file);
  ordered_json out;
  out["command"] = "null-table inspect";
  out["path"] = t.file;
  const ordered_json summary = table_summary(table);
  for (const auto& [k, v] : summary.items()) out[k] = v;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// --- power --------------------------------------------------------------------

struct PowerOptions {
  std::vector<std::string> families;
  std::vector<double> grid;
  std::int64_t m = 128;
  std::int64_t n = 128;
  int depth = 3;
  int depth_multi = kDefaultMultivariateDepth;
  double alpha = 0.05;
  std::int64_t reps = 500;
  std::int64_t sims = 10000;
  std::int64_t permutations = 199;
  std::vector<std::string> tests = {"august", "ks", "energy"};
  std::uint64_t seed = 0;
  std::string cache_dir;
  std::string output;
};

std::string fmt_double(double v, const char* spec = "%.6g") {
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

int cmd_power(const PowerOptions& p) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  std::vector<std::string> families = p.families;
  if (families.empty()) {
    families = univariate_family_names();
    const auto& biv = bivariate_family_names();
    families.insert(families.end(), biv.begin(), biv.end());
  }
  std::ostringstream csv;
  csv << "family,parameter,test,power\n";
  std::optional<NullTable> table;
  auto get_table = [&]() -> const NullTable& {
    if (!table) {
      Options tmp;
      tmp.cache_dir = p.cache_dir;
      const std::string dir = cache_dir(tmp);
      const std::uint64_t table_seed = derive_seed(p.seed, 0x7461626CULL);
      table = dir.empty() ? build_null_table(p.m, p.n, p.depth, p.sims, table_seed)
                          : load_or_build_null_table(dir, p.m, p.n, p.depth, p.sims, table_seed).table;
    }
    return *table;
  };
  const auto& biv_names = bivariate_family_names();
  for (const auto& name : families) {
    const bool bivariate = std::find(biv_names.begin(), biv_names.end(), name) != biv_names.end();
    const std::vector<double> grid = p.grid.empty() ? default_family_grid(name) : p.grid;
    for (double t : grid) {
      if (bivariate) {
        const BivariateFamily fam = bivariate_family(name, t);
        if (std::find(p.tests.begin(), p.tests.end(), "august") == p.tests.end()) continue;
        const PowerConfig cfg{p.m, p.n, p.depth_multi, p.alpha, p.reps, p.seed};
        const double power = multivariate_power_simulation(fam.x, fam.y, cfg, p.permutations);
        csv << name << "," << fmt_double(t) << ",august," << fmt_double(power) << "\n";
        continue;
      }
      const UnivariateFamily fam = univariate_family(name, t);
      const PowerConfig cfg{p.m, p.n, p.depth, p.alpha, p.reps, p.seed};
      for (const auto& test : p.tests) {
        double power = 0.0;
        if (test == "august") {
          power = power_simulation(fam.x, fam.y, cfg, get_table());
        } else {
          const BaselineTest b = test == "ks" ? BaselineTest::kKolmogorovSmirnov : BaselineTest::kEnergy;
          power = baseline_power_simulation(fam.x, fam.y, cfg, b, p.permutations);
        }
        csv << name << "," << fmt_double(t) << "," << test << "," << fmt_double(power) << "\n";
      }
    }
  }
  if (p.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(p.output, std::ios::binary | std::ios::trunc);
    if (!out || !(out << csv.str()) || !out.flush()) {
      throw Error(ErrorCode::kIOFailure, "cannot write " + p.output);
    }
  }
  return kExitOk;
}

// --- bench --------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::int64_t> sizes = {10'000, 100'000, 1'000'000};
  std::vector<std::int64_t> naive_sizes = {2'000, 4'000, 8'000, 16'000};
  int depth = 3;
  int repeats = 3;
  std::uint64_t seed = 0;
  std::string output;
};

double log_log_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [n, t] : pts) {
    const double a = std::log(n), b = std::log(t);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  const double k = static_cast<double>(pts.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

int cmd_bench(const BenchOptions& b) {
  if (b.repeats < 1) throw UsageError("--repeats must be >= 1");
  std::ostringstream csv;
  csv << "algorithm,n_total,m,n,seconds\n";
  auto time_one = [&](const std::string& algo, std::int64_t total) {
    const std::int64_t m = total / 2, n = total - total / 2;
    Rng rng = replicate_rng(b.seed, static_cast<std::uint64_t>(total));
    std::normal_distribution<double> dist;
    std::vector<double> x(static_cast<std::size_t>(m)), y(static_cast<std::size_t>(n));
    for (auto& v : x) v = dist(rng);
    for (auto& v : y) v = dist(rng) + 0.1;
    double best = INFINITY;
    volatile double sink = 0.0;
    for (int r = 0; r < b.repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      if (algo == "august_plus") {
        sink = august_plus(x, y, b.depth).statistic;
      } else if (algo == "august") {
        sink = august::august(x, y, b.depth).statistic;
      } else {
        sink = ks_statistic(x, y);
      }
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      best = std::min(best, dt.count());
    }
    (void)sink;
    csv << algo << "," << total << "," << m << "," << n << "," << fmt_double(best, "%.9g") << "\n";
    return std::make_pair(static_cast<double>(total), best);
  };
  std::vector<std::pair<double, double>> plus, naive, ks;
  for (auto total : b.sizes) plus.push_back(time_one("august_plus", total));
  for (auto total : b.sizes) ks.push_back(time_one("ks", total));
  for (auto total : b.naive_sizes) naive.push_back(time_one("august", total));

  if (b.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(b.output, std::ios::binary | std::ios::trunc);
    if (!out || !(out << csv.str()) || !out.flush()) {
      throw Error(ErrorCode::kIOFailure, "cannot write " + b.output);
    }
  }
  if (plus.size() >= 2) std::cerr << "slope,august_plus," << fmt_double(log_log_slope(plus)) << "\n";
  if (ks.size() >= 2) std::cerr << "slope,ks," << fmt_double(log_log_slope(ks)) << "\n";
  if (naive.size() >= 2) std::cerr << "slope,august," << fmt_double(log_log_slope(naive)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AUGUST two-sample test"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "august 1.0.0");

  Options test_opts, multi_opts, interp_opts;
  auto* test = app.add_subcommand("test", "Univariate two-sample test");
  add_data_options(test, test_opts, true);
  add_run_options(test, test_opts);
  test->add_option("--pvalue-method", test_opts.pvalue_method, "P-value method")
      ->check(CLI::IsMember({"montecarlo", "asymptotic", "permutation"}));
  test->add_option("--sims", test_opts.sims, "Null-table size B (montecarlo, asymptotic)");
  test->add_option("--permutations", test_opts.permutations, "Relabelings (permutation)");
  test->add_option("--cache-dir", test_opts.cache_dir, "Null-table cache (default $AUGUST_CACHE_DIR)");

  auto* multi = app.add_subcommand("test-multi", "Multivariate test, permutation p-value");
  add_data_options(multi, multi_opts, false);
  add_run_options(multi, multi_opts);
  multi->add_option("--permutations", multi_opts.permutations, "Relabelings");
  multi->add_option("--ridge", multi_opts.ridge, "Ridge added to both covariances")->check(CLI::NonNegativeNumber);

  auto* interp = app.add_subcommand("interpret", "Ranked symmetries and region plot data");
  add_data_options(interp, interp_opts, true);
  add_run_options(interp, interp_opts);
  interp->add_option("--reference", interp_opts.reference, "Reference sample")
      ->required()
      ->check(CLI::IsMember({"x", "y"}));
  interp->add_option("--top-k", interp_opts.top_k, "Number of ranked rows to report");
  interp->add_option("--bins", interp_opts.bins, "Histogram bins of the reference sample");
  interp->add_option("--output", interp_opts.output, "Plot-data JSON path")->required();
  interp->add_flag("--multivariate", interp_opts.multivariate, "Rows are v1,...,vk,label");
  interp->add_option("--ridge", interp_opts.ridge, "Ridge for multivariate data")->check(CLI::NonNegativeNumber);

  TableOptions table_opts;
  auto* table = app.add_subcommand("null-table", "Build or inspect cached null tables");
  table->require_subcommand(1);
  auto* build = table->add_subcommand("build", "Build (or load) a cached table");
  build->add_option("--m", table_opts.m, "Size of X")->required();
  build->add_option("--n", table_opts.n, "Size of Y")->required();
  build->add_option("--depth", table_opts.depth, "Depth d");
  build->add_option("--sims", table_opts.sims, "Table size B");
  build->add_option("--seed", table_opts.seed, "Seed");
  build->add_option("--generator", table_opts.generator, "Null generator")
      ->check(CLI::IsMember({"uniform", "normal", "cauchy"}));
  build->add_option("--cache-dir", table_opts.cache_dir, "Cache directory (default $AUGUST_CACHE_DIR)");
  auto* inspect = table->add_subcommand("inspect", "Print a cache file's header and quantiles");
  inspect->add_option("--file", table_opts.file, "Cache file")->required();

  PowerOptions power_opts;
  auto* power = app.add_subcommand("power", "Power curves over named alternative families (CSV)");
  power->add_option("--family", power_opts.families, "Family name (repeatable; default all)");
  power->add_option("--grid", power_opts.grid, "Parameter values overriding the default grid")->delimiter(',');
  power->add_option("--m", power_opts.m, "Size of X");
  power->add_option("--n", power_opts.n, "Size of Y");
  power->add_option("--depth", power_opts.depth, "Depth for univariate families");
  power->add_option("--depth-multi", power_opts.depth_multi, "Depth for bivariate families");
  power->add_option("--alpha", power_opts.alpha, "Significance level");
  power->add_option("--reps", power_opts.reps, "Replicates per point");
  power->add_option("--sims", power_opts.sims, "Null-table size B");
  power->add_option("--permutations", power_opts.permutations, "Relabelings for permutation tests");
  power->add_option("--tests", power_opts.tests, "Tests to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"august", "ks", "energy"}));
  power->add_option("--seed", power_opts.seed, "Seed");
  power->add_option("--cache-dir", power_opts.cache_dir, "Null-table cache");
  power->add_option("--output", power_opts.output, "CSV path (default stdout)");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Time august, august_plus and ks (CSV; slopes on stderr)");
  bench->add_option("--sizes", bench_opts.sizes, "Pooled sizes N for august_plus and ks")->delimiter(',');
  bench->add_option("--naive-sizes", bench_opts.naive_sizes, "Pooled sizes N for august")->delimiter(',');
  bench->add_option("--depth", bench_opts.depth, "Depth d");
  bench->add_option("--repeats", bench_opts.repeats, "Timing repeats (minimum reported)");
  bench->add_option("--seed", bench_opts.seed, "Seed");
  bench->add_option("--output", bench_opts.output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    print_error("Usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  try {
    if (*test) return cmd_test(test_opts);
    if (*multi) return cmd_test_multi(multi_opts);
    if (*interp) return cmd_interpret(interp_opts);
    if (*build) return cmd_null_table_build(table_opts);
    if (*inspect) return cmd_null_table_inspect(table_opts);
    if (*power) return cmd_power(power_opts);
    if (*bench) return cmd_bench(bench_opts);
  } catch (const UsageError& e) {
    print_error("Usage", e.what(), kExitUsage);
    return kExitUsage;
  } catch (const august::cli::DatasetError& e) {
    print_error(std::string(error_code_name(e.code())), e.what(), kExitParse, &e);
    return kExitParse;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    print_error(std::string(error_code_name(e.code())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    print_error("Internal", e.what(), 1);
    return 1;
  }
  return kExitUsage;
}
