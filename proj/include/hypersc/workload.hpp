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

// Synthetic campaign generation and check-in ingestion.
//
// Worker counts per period follow either a cosine profile
//   n_i = round(mean * (1 + amplitude * cos(2*pi*i / wavelength)))
// or Poisson draws. Worker identities come from a fixed pool (sampled without
// replacement within a period) so activation ledgers are meaningful across
// periods. Task durations are uniform on [1, Q], radii uniform over the
// configured choices. Everything is reproducible per seed.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hypersc/detail/text.hpp"
#include "hypersc/errors.hpp"
#include "hypersc/model.hpp"
#include "hypersc/rng.hpp"

namespace hypersc {

struct CosineArrival {
  double mean = 50.0;
  double amplitude = 0.5;   // in [0,1]
  double wavelength = 0.0;  // <= 0 means Q/4
};

struct PoissonArrival {
  double mean = 50.0;
};

struct UniformSpatial {};

struct GaussianMixtureSpatial {
  std::vector<Point> centers;
  std::vector<double> sigmas;
  std::vector<double> weights;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int periods = 28;
  std::variant<CosineArrival, PoissonArrival> worker_arrival = CosineArrival{};
  int tasks_per_period = 1000;
  std::vector<double> radius_choices = {5.0};
  std::variant<UniformSpatial, GaussianMixtureSpatial> spatial = UniformSpatial{};
  Rect area = {0.0, 0.0, 32.0, 32.0};
  double worker_pool_multiplier = 3.0;  // pool size = multiplier * mean

  void validate() const {
    if (periods < 1) throw ConfigError("generator: need at least one period");
    if (tasks_per_period < 0) throw ConfigError("generator: negative task count");
    if (!area.valid()) throw ConfigError("generator: degenerate area");
    if (radius_choices.empty()) throw ConfigError("generator: no radius choices");
    for (double r : radius_choices)
      if (r <= 0.0) throw ConfigError("generator: radius choices must be positive");
    if (worker_pool_multiplier <= 0.0) throw ConfigError("generator: pool multiplier must be positive");
    if (const auto* cos_arrival = std::get_if<CosineArrival>(&worker_arrival)) {
      if (cos_arrival->mean <= 0.0) throw ConfigError("generator: cosine mean must be positive");
      if (cos_arrival->amplitude < 0.0 || cos_arrival->amplitude > 1.0)
        throw ConfigError("generator: cosine amplitude must lie in [0,1]");
    } else {
      if (std::get<PoissonArrival>(worker_arrival).mean <= 0.0)
        throw ConfigError("generator: poisson mean must be positive");
    }
    if (const auto* gm = std::get_if<GaussianMixtureSpatial>(&spatial)) {
      if (gm->centers.empty() || gm->centers.size() != gm->sigmas.size() ||
          gm->centers.size() != gm->weights.size())
        throw ConfigError("generator: gaussian mixture needs matching centers/sigmas/weights");
      for (double s : gm->sigmas)
        if (s <= 0.0) throw ConfigError("generator: gaussian sigma must be positive");
      for (double w : gm->weights)
        if (w < 0.0) throw ConfigError("generator: gaussian weights must be non-negative");
    }
  }

  double arrival_mean() const {
    if (const auto* c = std::get_if<CosineArrival>(&worker_arrival)) return c->mean;
    return std::get<PoissonArrival>(worker_arrival).mean;
  }
};

namespace detail {

inline Point sample_location(const GeneratorConfig& cfg, Rng& rng) {
  if (std::holds_alternative<UniformSpatial>(cfg.spatial)) {
    return {rng.uniform(cfg.area.xmin, cfg.area.xmax), rng.uniform(cfg.area.ymin, cfg.area.ymax)};
  }
  const auto& gm = std::get<GaussianMixtureSpatial>(cfg.spatial);
  double total = 0.0;
  for (double w : gm.weights) total += w;
  double pickpoint = rng.uniform01() * total;
  std::size_t component = gm.centers.size() - 1;
  for (std::size_t i = 0; i < gm.weights.size(); ++i) {
    pickpoint -= gm.weights[i];
    if (pickpoint <= 0.0) {
      component = i;
      break;
    }
  }
  // Resample until inside the area, then clamp as a last resort so one draw
  // never consumes unbounded randomness.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Point p = {gm.centers[component].x + gm.sigmas[component] * rng.normal(),
                     gm.centers[component].y + gm.sigmas[component] * rng.normal()};
    if (cfg.area.contains(p)) return p;
  }
  return {std::clamp(gm.centers[component].x, cfg.area.xmin, cfg.area.xmax),
          std::clamp(gm.centers[component].y, cfg.area.ymin, cfg.area.ymax)};
}

}  // namespace detail

inline CampaignInstance generate_campaign(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, kStreamWorkload));

  CampaignInstance instance;
  instance.num_periods = cfg.periods;
  instance.area = cfg.area;

  const double mean = cfg.arrival_mean();
  const long long pool_size =
      std::max<long long>(1, static_cast<long long>(std::llround(cfg.worker_pool_multiplier * mean)));
  std::vector<WorkerId> pool(static_cast<std::size_t>(pool_size));
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<WorkerId>(i + 1);

  TaskId next_task = 1;
  for (int period = 1; period <= cfg.periods; ++period) {
    long long count = 0;
    if (const auto* cos_arrival = std::get_if<CosineArrival>(&cfg.worker_arrival)) {
      const double wavelength =
          cos_arrival->wavelength > 0.0 ? cos_arrival->wavelength : cfg.periods / 4.0;
      const double level =
          cos_arrival->mean *
          (1.0 + cos_arrival->amplitude * std::cos(2.0 * 3.14159265358979323846 * period / wavelength));
      count = std::max<long long>(0, static_cast<long long>(std::llround(level)));
    } else {
      count = rng.poisson(std::get<PoissonArrival>(cfg.worker_arrival).mean);
    }
    count = std::min<long long>(count, pool_size);

    // Partial Fisher-Yates over the id pool: sample `count` distinct ids.
    for (long long j = 0; j < count; ++j) {
      const std::size_t swap_with =
          static_cast<std::size_t>(j) +
          static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(pool_size - j)));
      std::swap(pool[static_cast<std::size_t>(j)], pool[swap_with]);
      instance.arrivals.push_back(
          {pool[static_cast<std::size_t>(j)], period, detail::sample_location(cfg, rng)});
    }

    for (int t = 0; t < cfg.tasks_per_period; ++t) {
      TaskSpec task;
      task.id = next_task++;
      task.location = detail::sample_location(cfg, rng);
      task.radius = cfg.radius_choices[static_cast<std::size_t>(
          rng.below(static_cast<std::uint64_t>(cfg.radius_choices.size())))];
      task.release_period = period;
      task.duration = static_cast<int>(rng.uniform_int(1, cfg.periods));
      instance.tasks.push_back(task);
    }
  }

  instance.sort_for_replay();
  instance.validate();
  return instance;
}

// ---------------------------------------------------------------------------
// Check-in ingestion: CSV with columns user_id,timestamp,x_km,y_km (numeric,
// pre-projected). Timestamps bucket into half-open periods [start, end) of
// `period_length` anchored at the earliest timestamp, so a check-in exactly
// on a boundary belongs to the later period. One arrival per (user, period):
// the earliest check-in wins. Out-of-area rows are dropped and counted.

struct IngestReport {
  CampaignInstance instance;
  long long dropped_out_of_area = 0;
};

inline IngestReport ingest_checkins(std::istream& in, double period_length, const Rect& area,
                                    const std::string& name = "<stream>") {
  if (period_length <= 0.0) throw ConfigError("ingest: period length must be positive");
  struct Row {
    WorkerId user;
    double timestamp;
    Point location;
  };
  std::vector<Row> rows;
  long long dropped = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("user_id", 0) == 0) continue;  // header
    const std::string context = name + ":" + std::to_string(line_no);
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw IoError(context + ": expected 4 comma-separated columns");
    Row row;
    row.user = detail::parse_int(cells[0], context);
    row.timestamp = detail::parse_double(cells[1], context);
    row.location = {detail::parse_double(cells[2], context),
                    detail::parse_double(cells[3], context)};
    if (!area.contains(row.location)) {
      ++dropped;
      continue;
    }
    rows.push_back(row);
  }

  IngestReport report;
  report.dropped_out_of_area = dropped;
  report.instance.area = area;
  if (rows.empty()) {
    report.instance.num_periods = 1;
    report.instance.validate();
    return report;
  }

  double t0 = rows.front().timestamp;
  for (const auto& r : rows) t0 = std::min(t0, r.timestamp);

  // (user, period) -> earliest check-in; stable on timestamp ties by keeping
  // the first row seen.
  std::map<std::pair<WorkerId, int>, std::pair<double, Point>> first_seen;
  int max_period = 1;
  for (const auto& r : rows) {
    const int period = 1 + static_cast<int>(std::floor((r.timestamp - t0) / period_length));
    max_period = std::max(max_period, period);
    auto [it, inserted] = first_seen.try_emplace({r.user, period}, r.timestamp, r.location);
    if (!inserted && r.timestamp < it->second.first) it->second = {r.timestamp, r.location};
  }
  report.instance.num_periods = max_period;
  for (const auto& [key, value] : first_seen)
    report.instance.arrivals.push_back({key.first, key.second, value.second});
  report.instance.sort_for_replay();
  report.instance.validate();
  return report;
}

inline IngestReport ingest_checkins_file(const std::string& path, double period_length,
                                         const Rect& area) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open check-in file '" + path + "'");
  return ingest_checkins(in, period_length, area, path);
}

// Exports arrivals as a check-in CSV that ingest_checkins maps back to the
// same periods (timestamps sit at period starts).
inline void write_checkin_csv(const CampaignInstance& instance, std::ostream& out,
                              double period_length) {
  out << "user_id,timestamp,x_km,y_km\n";
  for (const auto& a : instance.arrivals) {
    out << a.worker_id << ',' << detail::format_double((a.period - 1) * period_length) << ','
        << detail::format_double(a.location.x) << ',' << detail::format_double(a.location.y)
        << '\n';
  }
}

}  // namespace hypersc
