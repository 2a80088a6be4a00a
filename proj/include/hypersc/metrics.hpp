// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment metrics and CSV emission. One row per (config, seed). Numbers
// are written in their shortest round-trip decimal form, so identical runs
// produce byte-identical files. The activation histogram goes to a sibling
// `<path>.hist.csv`.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hypersc/detail/text.hpp"
#include "hypersc/errors.hpp"
#include "hypersc/simulate.hpp"

namespace hypersc {

struct MetricsRow {
  std::string config;  // sweep-point fingerprint
  std::uint64_t seed = 0;
  long long budget_total = 0;  // K
  int periods = 0;             // Q
  std::string radius;          // task radius choices, '|'-joined
  std::string heuristic;
  std::string budget_strategy;
  std::string utility;
  double alpha = 1.0;
  long long coverage = 0;
  double total_utility = 0.0;
  long long max_activations = 0;
  double mean_activations = 0.0;
  double runtime_ms = 0.0;
  std::map<long long, long long> activation_hist;  // activations -> worker count
  double overlap = std::numeric_limits<double>::quiet_NaN();  // vs. reference run, optional
};

// Jaccard overlap of selected (worker, period) pairs; 1 when both empty.
inline double overlap_ratio(const CampaignResult& a, const CampaignResult& b) {
  if (a.instance_digest != b.instance_digest)
    throw ConfigError("overlap_ratio: results come from different instances");
  const auto pa = a.selected_pairs();
  const auto pb = b.selected_pairs();
  if (pa.empty() && pb.empty()) return 1.0;
  std::vector<std::pair<WorkerId, int>> inter, uni;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(inter));
  std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(uni));
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

inline std::map<long long, long long> activation_histogram(const CampaignResult& result) {
  std::map<long long, long long> hist;
  for (const auto& [worker, count] : result.activations) hist[count] += 1;
  return hist;
}

inline constexpr const char* kCsvHeader =
    "config,seed,K,Q,r,heuristic,budget,utility,alpha,coverage,total_utility,max_activations,"
    "mean_activations,runtime_ms";

inline void emit_csv(std::span<const MetricsRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write CSV '" + path + "'");
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.config << ',' << r.seed << ',' << r.budget_total << ',' << r.periods << ',' << r.radius
        << ',' << r.heuristic << ',' << r.budget_strategy << ',' << r.utility << ','
        << detail::format_double(r.alpha) << ',' << r.coverage << ','
        << detail::format_double(r.total_utility) << ',' << r.max_activations << ','
        << detail::format_double(r.mean_activations) << ',' << detail::format_double(r.runtime_ms)
        << '\n';
  }
  if (!out) throw IoError("write failed for CSV '" + path + "'");

  std::ofstream hist(path + ".hist.csv", std::ios::binary);
  if (!hist) throw IoError("cannot write CSV '" + path + ".hist.csv'");
  hist << "config,seed,activations,worker_count\n";
  for (const auto& r : rows)
    for (const auto& [activations, workers] : r.activation_hist)
      hist << r.config << ',' << r.seed << ',' << activations << ',' << workers << '\n';
  if (!hist) throw IoError("write failed for CSV '" + path + ".hist.csv'");
}

inline std::vector<MetricsRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (line != kCsvHeader) throw IoError(path + ": unexpected header");
  std::vector<MetricsRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string context = path + ":" + std::to_string(line_no);
    std::istringstream ls(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 14) throw IoError(context + ": expected 14 columns");
    MetricsRow r;
    r.config = cells[0];
    r.seed = static_cast<std::uint64_t>(detail::parse_int(cells[1], context));
    r.budget_total = detail::parse_int(cells[2], context);
    r.periods = static_cast<int>(detail::parse_int(cells[3], context));
    r.radius = cells[4];
    r.heuristic = cells[5];
    r.budget_strategy = cells[6];
    r.utility = cells[7];
    r.alpha = detail::parse_double(cells[8], context);
    r.coverage = detail::parse_int(cells[9], context);
    r.total_utility = detail::parse_double(cells[10], context);
    r.max_activations = detail::parse_int(cells[11], context);
    r.mean_activations = detail::parse_double(cells[12], context);
    r.runtime_ms = detail::parse_double(cells[13], context);
    rows.push_back(std::move(r));
  }
  return rows;
}

struct QuantileSummary {
  std::size_t count = 0;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

// Linearly interpolated quantiles (the common "type 7" rule).
inline QuantileSummary quantiles(std::vector<double> values) {
  QuantileSummary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.count = values.size();
  auto q = [&values](double p) {
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.min = values.front();
  s.q1 = q(0.25);
  s.median = q(0.5);
  s.q3 = q(0.75);
  s.max = values.back();
  return s;
}

}  // namespace hypersc
