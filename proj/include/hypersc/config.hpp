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

// Experiment configuration: plain-text `key = value` files with dotted keys,
// '#' comments, and command-line overrides. See the README for the key list.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hypersc/budget.hpp"
#include "hypersc/detail/text.hpp"
#include "hypersc/errors.hpp"
#include "hypersc/heuristics.hpp"
#include "hypersc/moo.hpp"
#include "hypersc/offline.hpp"
#include "hypersc/workload.hpp"

namespace hypersc {

using KeyValues = std::map<std::string, std::string>;

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

inline KeyValues parse_key_values(std::istream& in, const std::string& name = "<config>") {
  KeyValues out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(name + ":" + std::to_string(line_no) + ": empty key");
    out[key] = value;
  }
  return out;
}

inline KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

inline void apply_override(KeyValues& kv, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  kv[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

inline std::vector<double> parse_double_list(const std::string& s, const std::string& context) {
  std::vector<double> out;
  for (const auto& tok : split(s, ','))
    if (!tok.empty()) out.push_back(parse_double(tok, context));
  return out;
}

inline std::vector<long long> parse_int_list(const std::string& s, const std::string& context) {
  std::vector<long long> out;
  for (const auto& tok : split(s, ','))
    if (!tok.empty()) out.push_back(parse_int(tok, context));
  return out;
}

}  // namespace detail

enum class StrategyKind { kFixed, kEqual, kRandom, kNaive, kAdapt };

inline const char* strategy_name(StrategyKind s) {
  switch (s) {
    case StrategyKind::kFixed: return "fixed";
    case StrategyKind::kEqual: return "equal";
    case StrategyKind::kRandom: return "random";
    case StrategyKind::kNaive: return "naive";
    case StrategyKind::kAdapt: return "adapt";
  }
  return "?";
}

enum class BaselineKind { kEqual, kWorkload };
enum class OfflineRun { kNone, kGreedy, kExhaustive };

struct ExperimentConfig {
  // Instance source: a file, or the generator.
  std::optional<std::string> instance_file;
  GeneratorConfig generator;

  HeuristicKind heuristic = HeuristicKind::kBasic;
  UtilityModel utility = UtilityModel::binary();
  double grid_cell_size = 1.0;

  StrategyKind strategy = StrategyKind::kEqual;
  long long budget_total = 448;
  std::optional<std::vector<long long>> fixed_per_period;  // overrides equal split
  EpsilonTable eps = EpsilonTable::defaults();
  BaselineKind baseline = BaselineKind::kEqual;
  GainAveraging averaging = GainAveraging::kPeriodDecay;

  bool moo_enabled = false;
  NsgaConfig nsga;

  OfflineRun offline = OfflineRun::kNone;
  std::uint64_t offline_cap = kDefaultEnumerationCap;

  // Wall-clock timing in the emitted rows. Off by default so that identical
  // config+seed pairs produce byte-identical CSVs.
  bool timing = false;

  std::vector<std::uint64_t> seeds = {1};
  std::vector<long long> sweep_budget;
  std::vector<double> sweep_radius;
  std::vector<int> sweep_periods;
  std::vector<double> sweep_alpha;

  int jobs = 0;  // 0 = hardware concurrency

  static ExperimentConfig from_keys(const KeyValues& kv);
};

inline ExperimentConfig ExperimentConfig::from_keys(const KeyValues& kv) {
  ExperimentConfig cfg;
  auto get = [&kv](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto ctx = [](const std::string& key) { return "config key '" + key + "'"; };

  if (auto v = get("instance.file")) cfg.instance_file = *v;

  if (auto v = get("gen.periods")) cfg.generator.periods = static_cast<int>(detail::parse_int(*v, ctx("gen.periods")));
  if (auto v = get("gen.tasks_per_period"))
    cfg.generator.tasks_per_period = static_cast<int>(detail::parse_int(*v, ctx("gen.tasks_per_period")));
  if (auto v = get("gen.radius")) cfg.generator.radius_choices = detail::parse_double_list(*v, ctx("gen.radius"));
  if (auto v = get("gen.pool_multiplier"))
    cfg.generator.worker_pool_multiplier = detail::parse_double(*v, ctx("gen.pool_multiplier"));
  if (auto v = get("gen.area")) {
    const auto nums = detail::parse_double_list(*v, ctx("gen.area"));
    if (nums.size() != 4) throw ConfigError("gen.area needs xmin,ymin,xmax,ymax");
    cfg.generator.area = {nums[0], nums[1], nums[2], nums[3]};
  }
  {
    const std::string arrival = get("gen.arrival").value_or("cosine");
    const double mu = get("gen.mu") ? detail::parse_double(*get("gen.mu"), ctx("gen.mu")) : 50.0;
    if (arrival == "cosine") {
      CosineArrival c;
      c.mean = mu;
      if (auto v = get("gen.amplitude")) c.amplitude = detail::parse_double(*v, ctx("gen.amplitude"));
      if (auto v = get("gen.wavelength")) c.wavelength = detail::parse_double(*v, ctx("gen.wavelength"));
      cfg.generator.worker_arrival = c;
    } else if (arrival == "poisson") {
      cfg.generator.worker_arrival = PoissonArrival{mu};
    } else {
      throw ConfigError("gen.arrival must be cosine or poisson");
    }
  }
  {
    const std::string spatial = get("gen.spatial").value_or("uniform");
    if (spatial == "uniform") {
      cfg.generator.spatial = UniformSpatial{};
    } else if (spatial == "gaussian") {
      GaussianMixtureSpatial gm;
      const auto centers = detail::split(get("gen.gaussian.centers").value_or(""), ';');
      for (const auto& c : centers) {
        if (c.empty()) continue;
        const auto xy = detail::split(c, ':');
        if (xy.size() != 2) throw ConfigError("gen.gaussian.centers entries must be x:y");
        gm.centers.push_back({detail::parse_double(xy[0], "gaussian center"),
                              detail::parse_double(xy[1], "gaussian center")});
      }
      gm.sigmas = detail::parse_double_list(get("gen.gaussian.sigmas").value_or(""), "gaussian sigmas");
      gm.weights = detail::parse_double_list(get("gen.gaussian.weights").value_or(""), "gaussian weights");
      if (gm.weights.empty()) gm.weights.assign(gm.centers.size(), 1.0);
      cfg.generator.spatial = gm;
    } else {
      throw ConfigError("gen.spatial must be uniform or gaussian");
    }
  }

  if (auto v = get("heuristic")) {
    if (*v == "basic") cfg.heuristic = HeuristicKind::kBasic;
    else if (*v == "temporal") cfg.heuristic = HeuristicKind::kTemporal;
    else if (*v == "spatial") cfg.heuristic = HeuristicKind::kSpatial;
    else throw ConfigError("heuristic must be basic, temporal or spatial");
  }
  if (auto v = get("utility.kind")) {
    if (*v == "binary") cfg.utility.kind = UtilityKind::kBinary;
    else if (*v == "linear") cfg.utility.kind = UtilityKind::kLinear;
    else if (*v == "zipf") cfg.utility.kind = UtilityKind::kZipf;
    else throw ConfigError("utility.kind must be binary, linear or zipf");
  }
  if (auto v = get("utility.skew")) cfg.utility.skew = detail::parse_double(*v, ctx("utility.skew"));
  if (auto v = get("utility.bins")) cfg.utility.bins = static_cast<int>(detail::parse_int(*v, ctx("utility.bins")));
  if (auto v = get("grid.cell_size")) cfg.grid_cell_size = detail::parse_double(*v, ctx("grid.cell_size"));

  const std::string mode = get("budget.mode").value_or("dynamic");
  if (auto v = get("budget.k")) cfg.budget_total = detail::parse_int(*v, ctx("budget.k"));
  if (mode == "fixed") {
    cfg.strategy = StrategyKind::kFixed;
    if (auto v = get("budget.per_period"))
      cfg.fixed_per_period = detail::parse_int_list(*v, ctx("budget.per_period"));
  } else if (mode == "dynamic") {
    const std::string strategy = get("budget.strategy").value_or("equal");
    if (strategy == "equal") cfg.strategy = StrategyKind::kEqual;
    else if (strategy == "random") cfg.strategy = StrategyKind::kRandom;
    else if (strategy == "naive") cfg.strategy = StrategyKind::kNaive;
    else if (strategy == "adapt") cfg.strategy = StrategyKind::kAdapt;
    else throw ConfigError("budget.strategy must be equal, random, naive or adapt");
  } else {
    throw ConfigError("budget.mode must be fixed or dynamic");
  }
  if (auto v = get("budget.eps")) {
    const auto e = detail::parse_double_list(*v, ctx("budget.eps"));
    if (e.size() != 4) throw ConfigError("budget.eps needs four comma-separated probabilities");
    cfg.eps = EpsilonTable::from_values(e[0], e[1], e[2], e[3]);
    cfg.eps.validate();
  }
  if (auto v = get("budget.baseline")) {
    if (*v == "equal") cfg.baseline = BaselineKind::kEqual;
    else if (*v == "workload") cfg.baseline = BaselineKind::kWorkload;
    else throw ConfigError("budget.baseline must be equal or workload");
  }
  if (auto v = get("budget.averaging")) {
    if (*v == "period") cfg.averaging = GainAveraging::kPeriodDecay;
    else if (*v == "accepted") cfg.averaging = GainAveraging::kAcceptedMean;
    else throw ConfigError("budget.averaging must be period or accepted");
  }

  if (auto v = get("moo.enabled")) cfg.moo_enabled = (*v == "1" || *v == "true" || *v == "yes");
  if (auto v = get("moo.alpha")) cfg.nsga.alpha = detail::parse_double(*v, ctx("moo.alpha"));
  if (auto v = get("moo.population"))
    cfg.nsga.population_size = static_cast<int>(detail::parse_int(*v, ctx("moo.population")));
  if (auto v = get("moo.generations"))
    cfg.nsga.max_generations = static_cast<int>(detail::parse_int(*v, ctx("moo.generations")));

  for (const char* key : {"offline.run", "offline.solver"}) {
    if (auto v = get(key)) {
      if (*v == "none") cfg.offline = OfflineRun::kNone;
      else if (*v == "greedy") cfg.offline = OfflineRun::kGreedy;
      else if (*v == "exhaustive") cfg.offline = OfflineRun::kExhaustive;
      else throw ConfigError(std::string(key) + " must be none, greedy or exhaustive");
    }
  }
  if (auto v = get("offline.cap"))
    cfg.offline_cap = static_cast<std::uint64_t>(detail::parse_int(*v, ctx("offline.cap")));
  if (auto v = get("timing")) cfg.timing = (*v == "1" || *v == "true" || *v == "on");

  if (auto v = get("seeds")) {
    cfg.seeds.clear();
    for (long long s : detail::parse_int_list(*v, ctx("seeds")))
      cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (auto v = get("sweep.k")) cfg.sweep_budget = detail::parse_int_list(*v, ctx("sweep.k"));
  if (auto v = get("sweep.r")) cfg.sweep_radius = detail::parse_double_list(*v, ctx("sweep.r"));
  if (auto v = get("sweep.q")) {
    cfg.sweep_periods.clear();
    for (long long q : detail::parse_int_list(*v, ctx("sweep.q")))
      cfg.sweep_periods.push_back(static_cast<int>(q));
  }
  if (auto v = get("sweep.alpha")) {
    cfg.sweep_alpha = detail::parse_double_list(*v, ctx("sweep.alpha"));
    if (!cfg.sweep_alpha.empty() && !cfg.moo_enabled)
      throw ConfigError("sweep.alpha requires moo.enabled (rows would collide otherwise)");
  }
  if (auto v = get("jobs")) cfg.jobs = static_cast<int>(detail::parse_int(*v, ctx("jobs")));

  // Unknown keys are configuration mistakes; fail loudly.
  static const char* known[] = {
      "instance.file", "gen.periods", "gen.tasks_per_period", "gen.radius", "gen.pool_multiplier",
      "gen.area", "gen.arrival", "gen.mu", "gen.amplitude", "gen.wavelength", "gen.spatial",
      "gen.gaussian.centers", "gen.gaussian.sigmas", "gen.gaussian.weights", "heuristic",
      "utility.kind", "utility.skew", "utility.bins", "grid.cell_size", "budget.mode", "budget.k",
      "budget.per_period", "budget.strategy", "budget.eps", "budget.baseline", "budget.averaging",
      "moo.enabled", "moo.alpha", "moo.population", "moo.generations", "offline.run",
      "offline.solver", "offline.cap",
      "timing", "seeds", "sweep.k", "sweep.r", "sweep.q", "sweep.alpha", "jobs"};
  for (const auto& [key, value] : kv) {
    if (std::find_if(std::begin(known), std::end(known),
                     [&key](const char* k) { return key == k; }) == std::end(known))
      throw ConfigError("unknown config key '" + key + "'");
  }
  return cfg;
}

}  // namespace hypersc
