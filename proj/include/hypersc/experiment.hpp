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

// Experiment orchestration: expands the sweep grid, runs (point, seed) jobs
// over a bounded thread pool, and gathers metric rows sorted by (config,
// seed) so output never depends on scheduling.

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hypersc/config.hpp"
#include "hypersc/instance_io.hpp"
#include "hypersc/metrics.hpp"
#include "hypersc/offline.hpp"
#include "hypersc/simulate.hpp"
#include "hypersc/workload.hpp"

namespace hypersc {

// One fully resolved sweep point.
struct SweepPoint {
  ExperimentConfig base;
  long long budget = 0;
  std::optional<double> radius;
  std::optional<int> periods;
  std::optional<double> alpha;

  GeneratorConfig generator(std::uint64_t seed) const {
    GeneratorConfig g = base.generator;
    g.seed = seed;
    if (radius) g.radius_choices = {*radius};
    if (periods) g.periods = *periods;
    return g;
  }

  double effective_alpha() const { return alpha ? *alpha : base.nsga.alpha; }
};

namespace detail {

inline std::string radius_label(const std::vector<double>& choices) {
  if (choices.size() > 4) return "mixed";
  std::string out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i) out += '|';
    out += format_double(choices[i]);
  }
  return out;
}

inline std::string arrival_label(const GeneratorConfig& g) {
  if (const auto* c = std::get_if<CosineArrival>(&g.worker_arrival))
    return "cos" + format_double(c->mean);
  return "poi" + format_double(std::get<PoissonArrival>(g.worker_arrival).mean);
}

inline std::string basename(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

}  // namespace detail

inline std::string fingerprint(const SweepPoint& point, const std::string& strategy_label,
                               const std::string& heuristic_label) {
  const auto& cfg = point.base;
  std::ostringstream out;
  if (cfg.instance_file) {
    out << "file:" << detail::basename(*cfg.instance_file);
  } else {
    const auto g = point.generator(0);
    out << detail::arrival_label(g) << "-q" << g.periods << "-t" << g.tasks_per_period << "-r"
        << detail::radius_label(g.radius_choices);
  }
  out << "-" << heuristic_label << "-" << strategy_label << "-" << utility_name(cfg.utility.kind);
  if (cfg.moo_enabled) out << "-moo-a" << detail::format_double(point.effective_alpha());
  out << "-K" << point.budget;
  return out.str();
}

inline std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<long long> budgets = cfg.sweep_budget.empty()
                                       ? std::vector<long long>{cfg.budget_total}
                                       : cfg.sweep_budget;
  std::vector<std::optional<double>> radii{std::nullopt};
  if (!cfg.sweep_radius.empty()) {
    radii.clear();
    for (double r : cfg.sweep_radius) radii.emplace_back(r);
  }
  std::vector<std::optional<int>> periods{std::nullopt};
  if (!cfg.sweep_periods.empty()) {
    periods.clear();
    for (int q : cfg.sweep_periods) periods.emplace_back(q);
  }
  std::vector<std::optional<double>> alphas{std::nullopt};
  if (!cfg.sweep_alpha.empty()) {
    alphas.clear();
    for (double a : cfg.sweep_alpha) alphas.emplace_back(a);
  }
  std::vector<SweepPoint> points;
  for (long long k : budgets)
    for (const auto& r : radii)
      for (const auto& q : periods)
        for (const auto& a : alphas) {
          SweepPoint p;
          p.base = cfg;
          p.budget = k;
          p.radius = r;
          p.periods = q;
          p.alpha = a;
          points.push_back(std::move(p));
        }
  return points;
}

namespace detail {

inline MetricsRow result_to_row(const SweepPoint& point, std::uint64_t seed,
                                const CampaignInstance& instance, const CampaignResult& result,
                                const std::string& strategy_label,
                                const std::string& heuristic_label, double runtime_ms) {
  MetricsRow row;
  row.config = fingerprint(point, strategy_label, heuristic_label);
  row.seed = seed;
  row.budget_total = point.budget;
  row.periods = instance.num_periods;
  if (point.base.instance_file) {
    std::vector<double> radii;
    for (const auto& t : instance.tasks) radii.push_back(t.radius);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    row.radius = radius_label(radii);
  } else {
    row.radius = radius_label(point.generator(seed).radius_choices);
  }
  row.heuristic = heuristic_label;
  row.budget_strategy = strategy_label;
  row.utility = utility_name(point.base.utility.kind);
  row.alpha = point.base.moo_enabled ? point.effective_alpha() : 1.0;
  row.coverage = result.total_coverage;
  row.total_utility = result.total_utility;
  row.max_activations = result.max_activations();
  row.mean_activations = result.mean_activations();
  row.runtime_ms = runtime_ms;
  row.activation_hist = activation_histogram(result);
  return row;
}

inline CampaignResult offline_to_result(const CampaignInstance& instance,
                                        const OfflineResult& offline) {
  CampaignResult result;
  result.instance_digest = instance.digest();
  result.num_periods = instance.num_periods;
  result.total_coverage = offline.coverage;
  result.total_utility = static_cast<double>(offline.coverage);
  for (int p = 1; p <= instance.num_periods; ++p) {
    PeriodStats stats;
    stats.period = p;
    result.periods.push_back(std::move(stats));
  }
  for (const auto& [worker, period] : offline.selected) {
    result.periods[static_cast<std::size_t>(period - 1)].selected.push_back(worker);
    result.periods[static_cast<std::size_t>(period - 1)].budget_spent += 1;
    result.activations[worker] += 1;
  }
  return result;
}

}  // namespace detail

// Runs one (sweep point, seed) job; may yield several rows when offline
// baselines are requested.
inline std::vector<MetricsRow> run_job(const SweepPoint& point, std::uint64_t seed) {
  const ExperimentConfig& cfg = point.base;
  CampaignInstance instance;
  if (cfg.instance_file) {
    instance = read_instance_file(*cfg.instance_file);
    if (point.periods || point.radius)
      throw ConfigError("sweep.q / sweep.r require the generator instance source");
  } else {
    instance = generate_campaign(point.generator(seed));
  }

  RunOptions options;
  options.heuristic = cfg.heuristic;
  options.utility = cfg.utility;
  options.grid_cell_size = cfg.grid_cell_size;
  options.averaging = cfg.averaging;

  const int num_periods = instance.num_periods;
  const long long total = point.budget;

  std::vector<MetricsRow> rows;
  const std::string heuristic_label =
      cfg.moo_enabled && cfg.strategy == StrategyKind::kFixed ? "nsga"
                                                              : heuristic_name(cfg.heuristic);

  CampaignResult result;
  std::string strategy_label = strategy_name(cfg.strategy);
  long long effective_total = total;
  switch (cfg.strategy) {
    case StrategyKind::kFixed: {
      if (cfg.fixed_per_period && static_cast<int>(cfg.fixed_per_period->size()) != num_periods)
        throw ConfigError("budget.per_period length does not match the campaign");
      BudgetPlan plan = cfg.fixed_per_period
                            ? BudgetPlan::fixed(*cfg.fixed_per_period)
                            : allocate_equal(total, num_periods);
      effective_total = plan.total;
      if (cfg.moo_enabled) {
        NsgaConfig nsga = cfg.nsga;
        nsga.alpha = point.effective_alpha();
        strategy_label = "fixed";
        result = run_fixed_nsga(instance, plan, nsga, seed, options);
      } else {
        result = run_fixed_plan(instance, plan, options);
      }
      break;
    }
    case StrategyKind::kEqual:
      result = run_fixed_plan(instance, allocate_equal(total, num_periods), options);
      break;
    case StrategyKind::kRandom:
      result = run_fixed_plan(instance, allocate_random(total, num_periods, seed), options);
      break;
    case StrategyKind::kNaive:
      result = run_naive(instance, total, options);
      break;
    case StrategyKind::kAdapt: {
      BudgetPlan baseline = allocate_equal(total, num_periods);
      if (cfg.baseline == BaselineKind::kWorkload) {
        if (cfg.instance_file)
          throw ConfigError("budget.baseline=workload requires the generator instance source");
        GeneratorConfig history_cfg = point.generator(derive_seed(seed, kStreamHistory));
        const CampaignInstance history = generate_campaign(history_cfg);
        const auto graph = CampaignBipartiteGraph::build(history, cfg.grid_cell_size);
        const auto offline = greedy_dmtc(graph, total);
        std::vector<long long> counts(offline.per_period_selected.begin() + 1,
                                      offline.per_period_selected.end());
        baseline = derive_workload_baseline(counts, total);
        strategy_label = "adaptw";
      }
      AdaptOptions adapt;
      if (cfg.moo_enabled) adapt.moo_alpha = point.effective_alpha();
      result = run_adapt(instance, total, cfg.eps, baseline, seed, options, adapt);
      break;
    }
  }
  SweepPoint row_point = point;
  row_point.budget = effective_total;
  rows.push_back(detail::result_to_row(row_point, seed, instance, result, strategy_label,
                                       heuristic_label,
                                       cfg.timing ? result.total_runtime_ms() : 0.0));

  if (cfg.offline != OfflineRun::kNone) {
    const auto graph = CampaignBipartiteGraph::build(instance, cfg.grid_cell_size);
    const auto budgets = cfg.fixed_per_period && cfg.strategy == StrategyKind::kFixed
                             ? *cfg.fixed_per_period
                             : allocate_equal(effective_total, num_periods).per_period;
    const bool exact = cfg.offline == OfflineRun::kExhaustive;
    {
      detail::PeriodTimer timer;
      const auto offline = exact ? exhaustive_fmtc(graph, budgets, cfg.offline_cap)
                                 : greedy_fmtc(graph, budgets);
      rows.push_back(detail::result_to_row(row_point, seed, instance,
                                           detail::offline_to_result(instance, offline),
                                           exact ? "fixedoff-exact" : "fixedoff-greedy", "offline",
                                           cfg.timing ? timer.elapsed_ms() : 0.0));
    }
    {
      detail::PeriodTimer timer;
      const auto offline = exact ? exhaustive_dmtc(graph, effective_total, cfg.offline_cap)
                                 : greedy_dmtc(graph, effective_total);
      rows.push_back(detail::result_to_row(row_point, seed, instance,
                                           detail::offline_to_result(instance, offline),
                                           exact ? "dynoff-exact" : "dynoff-greedy", "offline",
                                           cfg.timing ? timer.elapsed_ms() : 0.0));
    }
  }
  return rows;
}

// Expands the sweep, executes all jobs, and returns rows sorted by
// (config, seed). Any job failure is rethrown with its sweep context.
inline std::vector<MetricsRow> run_experiment(const ExperimentConfig& cfg) {
  const auto points = expand_sweep(cfg);
  struct Job {
    const SweepPoint* point;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& point : points)
    for (std::uint64_t seed : cfg.seeds) jobs.push_back({&point, seed});

  std::vector<std::vector<MetricsRow>> results(jobs.size());
  std::vector<std::string> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                        : std::min<unsigned>(hardware, 8u);

  auto worker_loop = [&]() {
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= jobs.size()) return;
      const Job& job = jobs[index];
      try {
        results[index] = run_job(*job.point, job.seed);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "sweep point K=" << job.point->budget;
        if (job.point->radius) msg << " r=" << *job.point->radius;
        if (job.point->periods) msg << " Q=" << *job.point->periods;
        if (job.point->alpha) msg << " alpha=" << *job.point->alpha;
        msg << " seed=" << job.seed << ": " << e.what();
        failures[index] = msg.str();
      }
    }
  };

  if (workers <= 1 || jobs.size() <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker_loop);
    for (auto& t : pool) t.join();
  }

  for (const auto& failure : failures)
    if (!failure.empty()) throw Error(failure);

  std::vector<MetricsRow> rows;
  for (auto& r : results)
    for (auto& row : r) rows.push_back(std::move(row));
  std::stable_sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
    if (a.config != b.config) return a.config < b.config;
    return a.seed < b.seed;
  });
  return rows;
}

}  // namespace hypersc
