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

#include "august/interpret.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "august/errors.h"

namespace august {
namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  return nlohmann::json(s).dump();
}

int sign_changes(const std::vector<int>& pattern) {
  int changes = 0;
  for (std::size_t i = 1; i < pattern.size(); ++i) changes += pattern[i] != pattern[i - 1];
  return changes;
}

}  // namespace

std::string_view reference_name(Reference ref) {
  return ref == Reference::kX ? "X" : "Y";
}

std::vector<RankedSymmetry> rank_symmetries(const SymmetryVector& stats) {
  const HadamardMatrix h = sylvester(stats.depth);
  std::vector<RankedSymmetry> out;
  out.reserve(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    out.push_back({0, static_cast<int>(i) + 2, h.row(i + 1), stats[i]});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::abs(a.value) > std::abs(b.value);
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

std::vector<RankedSymmetry> rank_symmetries(const AugustResult& result,
                                            Reference reference) {
  return rank_symmetries(reference == Reference::kY ? result.s_x : result.s_y);
}

std::string row_label(int depth, int row_index, SampleKind kind) {
  const bool ring = kind == SampleKind::kMahalanobis;
  const auto location = ring ? "elliptical rings: inner vs outer balance"
                             : "location: left/right balance";
  const auto scale = ring ? "elliptical rings: middle bands vs innermost and outermost"
                          : "scale: center vs tails";
  if (depth == 1 && row_index == 2) return location;
  if (depth == 2) {
    switch (row_index) {
      case 2: return ring ? "elliptical rings: alternating bands" : "fine alternation";
      case 3: return location;
      case 4: return scale;
      default: break;
    }
  }
  if (depth == 3) {
    switch (row_index) {
      case 2: return ring ? "elliptical rings: fine alternating bands" : "fine Venetian blind";
      case 3: return ring ? "elliptical rings: coarse alternating bands"
                          : "coarse Venetian blind";
      case 5: return location;
      case 7: return scale;
      default: break;
    }
  }
  const HadamardMatrix h = sylvester(depth);
  const int changes = sign_changes(h.row(static_cast<std::size_t>(row_index - 1)));
  std::string label = ring ? "elliptical rings: pattern with " : "pattern with ";
  return label + std::to_string(changes) + " sign changes";
}

std::vector<Interval> quantile_intervals(std::span<const double> reference, int depth) {
  const auto cells = SubsampleConfig::for_depth(depth).cell_count();
  if (reference.size() < cells) {
    throw Error(ErrorCode::kSampleTooSmall,
                "reference sample needs at least 2^d points for regions");
  }
  std::vector<double> sorted(reference.begin(), reference.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t base = sorted.size() / cells;
  const std::size_t extra = sorted.size() % cells;

  std::vector<Interval> out(cells);
  std::size_t start = 0;
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t end = start + base + (c < extra ? 1 : 0);
    out[c].lo = c == 0 ? sorted.front() : out[c - 1].hi;
    out[c].hi = c + 1 == cells ? sorted.back() : 0.5 * (sorted[end - 1] + sorted[end]);
    start = end;
  }
  return out;
}

std::vector<bool> shading(std::span<const int> pattern, double value) {
  const int s = (value > 0) - (value < 0);
  std::vector<bool> out(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) out[i] = pattern[i] * s > 0;
  return out;
}

std::vector<RegionReport> region_report(const AugustResult& result,
                                        std::span<const double> x,
                                        std::span<const double> y,
                                        Reference reference, int top_k) {
  const auto ref_sample = reference == Reference::kY ? y : x;
  const std::vector<Interval> intervals = quantile_intervals(ref_sample, result.depth);
  const auto ranked = rank_symmetries(result, reference);
  const auto k = static_cast<std::size_t>(std::clamp<int>(top_k, 0, static_cast<int>(ranked.size())));

  std::vector<RegionReport> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& r = ranked[i];
    out.push_back({std::string(reference_name(reference)), intervals,
                   shading(r.row_pattern, r.value), r.row_index, r.row_pattern, r.value,
                   r.rank});
  }
  return out;
}

Histogram histogram(std::span<const double> values, int bins) {
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  if (values.empty()) throw Error(ErrorCode::kEmptySample, "histogram of an empty sample");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    h.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  }
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    auto it = std::upper_bound(h.edges.begin() + 1, h.edges.end() - 1, v);
    ++h.counts[static_cast<std::size_t>(it - (h.edges.begin() + 1))];
  }
  return h;
}

PlotData make_plot_data(const std::vector<RegionReport>& reports,
                        std::span<const double> reference_sample,
                        std::string reference_label, int histogram_bins) {
  PlotData data;
  data.reference_label = std::move(reference_label);
  data.histogram = histogram(reference_sample, histogram_bins);
  data.reports = reports;
  for (auto& r : data.reports) r.reference_label = data.reference_label;
  return data;
}

std::string plot_data_json(const PlotData& data) {
  std::ostringstream os;
  os << "{\n  \"schema_version\": " << data.schema_version << ",\n";
  os << "  \"reference_label\": " << quoted(data.reference_label) << ",\n";
  os << "  \"histogram\": {\n    \"edges\": [";
  for (std::size_t i = 0; i < data.histogram.edges.size(); ++i) {
    os << (i ? ", " : "") << number(data.histogram.edges[i]);
  }
  os << "],\n    \"counts\": [";
  for (std::size_t i = 0; i < data.histogram.counts.size(); ++i) {
    os << (i ? ", " : "") << data.histogram.counts[i];
  }
  os << "]\n  },\n  \"reports\": [";
  for (std::size_t r = 0; r < data.reports.size(); ++r) {
    const auto& rep = data.reports[r];
    os << (r ? "," : "") << "\n    {\n";
    os << "      \"rank\": " << rep.rank << ",\n";
    os << "      \"row_index\": " << rep.row_index << ",\n";
    os << "      \"row_pattern\": [";
    for (std::size_t i = 0; i < rep.row_pattern.size(); ++i) {
      os << (i ? ", " : "") << rep.row_pattern[i];
    }
    os << "],\n      \"statistic_value\": " << number(rep.statistic_value) << ",\n";
    os << "      \"intervals\": [";
    for (std::size_t i = 0; i < rep.intervals.size(); ++i) {
      os << (i ? "," : "") << "\n        {\"lo\": " << number(rep.intervals[i].lo)
         << ", \"hi\": " << number(rep.intervals[i].hi)
         << ", \"shaded\": " << (rep.shaded[i] ? "true" : "false") << "}";
    }
    os << (rep.intervals.empty() ? "]" : "\n      ]") << "\n    }";
  }
  os << (data.reports.empty() ? "]" : "\n  ]") << "\n}\n";
  return os.str();
}

PlotData parse_plot_data(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PlotData data;
    data.schema_version = j.at("schema_version").get<int>();
    if (data.schema_version != kPlotSchemaVersion) {
      throw Error(ErrorCode::kParseFailure,
                  "unsupported plot schema version " + std::to_string(data.schema_version));
    }
    data.reference_label = j.at("reference_label").get<std::string>();
    data.histogram.edges = j.at("histogram").at("edges").get<std::vector<double>>();
    data.histogram.counts = j.at("histogram").at("counts").get<std::vector<std::int64_t>>();
    for (const auto& jr : j.at("reports")) {
      RegionReport rep;
      rep.reference_label = data.reference_label;
      rep.rank = jr.at("rank").get<int>();
      rep.row_index = jr.at("row_index").get<int>();
      rep.row_pattern = jr.at("row_pattern").get<std::vector<int>>();
      rep.statistic_value = jr.at("statistic_value").get<double>();
      for (const auto& ji : jr.at("intervals")) {
        rep.intervals.push_back({ji.at("lo").get<double>(), ji.at("hi").get<double>()});
        rep.shaded.push_back(ji.at("shaded").get<bool>());
      }
      data.reports.push_back(std::move(rep));
    }
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseFailure, std::string("malformed plot data: ") + e.what());
  }
}

void emit_plot_data(const PlotData& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIOFailure, "cannot open " + path.string() + " for writing");
  out << plot_data_json(data);
  out.close();
  if (!out) throw Error(ErrorCode::kIOFailure, "failed writing " + path.string());
}

PlotData read_plot_data(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIOFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_plot_data(buf.str());
}

}  // namespace august
