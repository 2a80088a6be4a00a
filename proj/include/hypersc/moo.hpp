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

// Worker-overload accounting and the multi-objective selector.
//
// Two objectives per period: maximize the number of covered tasks, minimize
// the highest cumulative activation count among the selected workers. The
// fixed-budget variant runs an NSGA-II style evolutionary search over worker
// subsets and picks the final individual by the weighted, normalized sum
//   alpha * coverage/|T_i| - (1-alpha) * max_activations/Q.
// The dynamic-budget variant reuses the adaptive allocator with the gain
//   alpha * priority/|T_i| - (1-alpha) * count(w)/Q
// (may be negative for overloaded workers).

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "hypersc/bitset.hpp"
#include "hypersc/heuristics.hpp"
#include "hypersc/model.hpp"
#include "hypersc/rng.hpp"

namespace hypersc {

// Cumulative activation counts per persistent worker identity. Counts only
// grow; updated between periods by a single writer.
class ActivationLedger {
 public:
  long long count(WorkerId w) const {
    auto it = counts_.find(w);
    return it == counts_.end() ? 0 : it->second;
  }

  void record(WorkerId w) { counts_[w] += 1; }

  long long total() const {
    long long t = 0;
    for (const auto& [w, c] : counts_) t += c;
    return t;
  }

  std::map<WorkerId, long long> snapshot() const {
    return {counts_.begin(), counts_.end()};
  }

 private:
  std::unordered_map<WorkerId, long long> counts_;
};

// Overload-penalized gain for the dynamic-budget allocator.
inline double moo_gain(double priority, long long activation_count, double alpha,
                       long long tasks_in_period, int periods) {
  if (tasks_in_period <= 0 || periods <= 0)
    throw ModelError("moo_gain: tasks_in_period and periods must be positive");
  return alpha * priority / static_cast<double>(tasks_in_period) -
         (1.0 - alpha) * static_cast<double>(activation_count) / static_cast<double>(periods);
}

struct NsgaConfig {
  int population_size = 100;
  int max_generations = 200;  // reported setting is 50000; desk default is small
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;  // < 0 means 1/|W_i|
  double alpha = 0.1;

  void validate() const {
    if (population_size < 2) throw ConfigError("nsga: population must be at least 2");
    if (max_generations < 0) throw ConfigError("nsga: negative generation count");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) throw ConfigError("nsga: bad crossover rate");
    if (mutation_rate > 1.0) throw ConfigError("nsga: bad mutation rate");
    if (alpha <= 0.0 || alpha >= 1.0) throw ConfigError("nsga: alpha must lie in (0,1)");
  }
};

struct Individual {
  DynBitset genome;           // over the period's workers
  long long coverage = 0;     // objective 1, maximized
  long long max_activation = 0;  // objective 2, minimized; 0 for empty selection
};

// True when a beats-or-ties b on both objectives and strictly beats it on one.
inline bool dominates(const Individual& a, const Individual& b) {
  if (a.coverage < b.coverage || a.max_activation > b.max_activation) return false;
  return a.coverage > b.coverage || a.max_activation < b.max_activation;
}

namespace detail {

// Crowding distance within one front (NSGA-II); boundary points get +inf.
inline std::vector<double> crowding_distance(std::span<const Individual> population,
                                             const std::vector<int>& front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    return dist;
  }
  auto accumulate_axis = [&](auto objective) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return objective(population[static_cast<std::size_t>(front[a])]) <
             objective(population[static_cast<std::size_t>(front[b])]);
    });
    const double lo = objective(population[static_cast<std::size_t>(front[order.front()])]);
    const double hi = objective(population[static_cast<std::size_t>(front[order.back()])]);
    dist[order.front()] = std::numeric_limits<double>::infinity();
    dist[order.back()] = std::numeric_limits<double>::infinity();
    if (hi <= lo) return;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double next = objective(population[static_cast<std::size_t>(front[order[i + 1]])]);
      const double prev = objective(population[static_cast<std::size_t>(front[order[i - 1]])]);
      dist[order[i]] += (next - prev) / (hi - lo);
    }
  };
  accumulate_axis([](const Individual& x) { return static_cast<double>(x.coverage); });
  accumulate_axis([](const Individual& x) { return static_cast<double>(x.max_activation); });
  return dist;
}

}  // namespace detail

// Fast nondominated sort. Front 0 is the Pareto-optimal subset; each next
// front is Pareto-optimal once earlier fronts are removed. Within a front,
// indices are ordered by crowding distance descending (ties by index).
inline std::vector<std::vector<int>> nondominated_sort(std::span<const Individual> population) {
  const std::size_t n = population.size();
  std::vector<std::vector<int>> dominated(n);
  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<int>> fronts;
  std::vector<int> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(population[p], population[q]))
        dominated[p].push_back(static_cast<int>(q));
      else if (dominates(population[q], population[p]))
        ++domination_count[p];
    }
    if (domination_count[p] == 0) current.push_back(static_cast<int>(p));
  }
  while (!current.empty()) {
    std::vector<int> next;
    for (int p : current) {
      for (int q : dominated[static_cast<std::size_t>(p)]) {
        if (--domination_count[static_cast<std::size_t>(q)] == 0) next.push_back(q);
      }
    }
    const auto dist = detail::crowding_distance(population, current);
    std::vector<std::size_t> order(current.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
    std::vector<int> sorted;
    sorted.reserve(current.size());
    for (std::size_t i : order) sorted.push_back(current[i]);
    fronts.push_back(std::move(sorted));
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

// Evolutionary per-period selector for the fixed-budget overload variant.
// Deterministic given the seed; the returned genome never exceeds the budget.
inline SelectionOutcome nsga_select(const CoverageInstanceSet& coverage,
                                    const std::vector<TaskId>& active, long long budget,
                                    const ActivationLedger& ledger, const NsgaConfig& cfg,
                                    std::uint64_t seed, const TaskLookup& tasks,
                                    int campaign_periods,
                                    const UtilityModel& utility = UtilityModel::binary()) {
  cfg.validate();
  SelectionOutcome out;
  const std::size_t num_workers = coverage.coverage.size();
  const PriorityModel credit_model{HeuristicKind::kBasic, utility, nullptr};
  const auto dc = detail::DenseCoverage::build(coverage, active, credit_model, coverage.period, tasks);
  const std::size_t num_tasks = dc.task_ids.size();
  for (TaskId t : dc.task_ids) out.residual_uncovered.push_back(t);
  if (num_workers == 0 || budget <= 0 || num_tasks == 0) return out;

  // count_i semantics: a selected worker's activation count includes the
  // activation being decided now.
  std::vector<long long> count_if_selected(num_workers);
  for (std::size_t w = 0; w < num_workers; ++w)
    count_if_selected[w] = ledger.count(dc.rows[w].worker) + 1;

  Rng rng(derive_seed(seed, kStreamNsga));
  const double mutation =
      cfg.mutation_rate >= 0.0 ? cfg.mutation_rate : 1.0 / static_cast<double>(num_workers);

  DynBitset scratch(num_tasks);
  auto evaluate = [&](Individual& ind) {
    scratch.clear();
    long long max_act = 0;
    for (std::size_t w = 0; w < num_workers; ++w) {
      if (!ind.genome.test(w)) continue;
      scratch |= dc.rows[w].covers;
      max_act = std::max(max_act, count_if_selected[w]);
    }
    ind.coverage = static_cast<long long>(scratch.count());
    ind.max_activation = max_act;
  };

  // Over-budget repair: drop the selected worker whose removal costs the
  // least coverage until feasible (ties to the lowest row index).
  auto repair = [&](DynBitset& genome) {
    while (static_cast<long long>(genome.count()) > budget) {
      long long best_loss = std::numeric_limits<long long>::max();
      std::size_t victim = num_workers;
      for (std::size_t w = 0; w < num_workers; ++w) {
        if (!genome.test(w)) continue;
        scratch.clear();
        for (std::size_t v = 0; v < num_workers; ++v)
          if (v != w && genome.test(v)) scratch |= dc.rows[v].covers;
        const long long loss = static_cast<long long>(scratch.gain_count(dc.rows[w].covers));
        if (loss < best_loss) {
          best_loss = loss;
          victim = w;
        }
      }
      genome.reset(victim);
    }
  };

  std::vector<Individual> population(static_cast<std::size_t>(cfg.population_size));
  for (auto& ind : population) {
    ind.genome = DynBitset(num_workers);
    const long long target = rng.uniform_int(0, std::min<long long>(budget, static_cast<long long>(num_workers)));
    for (long long picked = 0; picked < target;) {
      const std::size_t w = static_cast<std::size_t>(rng.below(num_workers));
      if (ind.genome.test(w)) continue;
      ind.genome.set(w);
      ++picked;
    }
    evaluate(ind);
  }

  auto fronts = nondominated_sort(population);
  std::vector<int> rank(population.size(), 0);
  std::vector<double> crowd(population.size(), 0.0);
  auto refresh_rank_crowd = [&]() {
    rank.assign(population.size(), 0);
    crowd.assign(population.size(), 0.0);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      const auto dist = detail::crowding_distance(population, fronts[f]);
      for (std::size_t i = 0; i < fronts[f].size(); ++i) {
        rank[static_cast<std::size_t>(fronts[f][i])] = static_cast<int>(f);
        crowd[static_cast<std::size_t>(fronts[f][i])] = dist[i];
      }
    }
  };
  refresh_rank_crowd();

  auto tournament = [&]() -> const Individual& {
    const std::size_t a = static_cast<std::size_t>(rng.below(population.size()));
    const std::size_t b = static_cast<std::size_t>(rng.below(population.size()));
    if (rank[a] != rank[b]) return population[rank[a] < rank[b] ? a : b];
    return population[crowd[a] >= crowd[b] ? a : b];
  };

  for (int gen = 0; gen < cfg.max_generations; ++gen) {
    std::vector<Individual> offspring;
    offspring.reserve(population.size());
    while (offspring.size() < population.size()) {
      const Individual& p1 = tournament();
      const Individual& p2 = tournament();
      Individual child;
      child.genome = DynBitset(num_workers);
      const bool cross = rng.uniform01() < cfg.crossover_rate;
      for (std::size_t w = 0; w < num_workers; ++w) {
        const bool bit = cross ? (rng.uniform01() < 0.5 ? p1.genome.test(w) : p2.genome.test(w))
                               : p1.genome.test(w);
        const bool flipped = rng.uniform01() < mutation ? !bit : bit;
        if (flipped) child.genome.set(w);
      }
      repair(child.genome);
      evaluate(child);
      offspring.push_back(std::move(child));
    }
    for (auto& ind : offspring) population.push_back(std::move(ind));
    fronts = nondominated_sort(population);
    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(cfg.population_size));
    for (const auto& front : fronts) {
      for (int idx : front) {
        if (next.size() == static_cast<std::size_t>(cfg.population_size)) break;
        next.push_back(std::move(population[static_cast<std::size_t>(idx)]));
      }
      if (next.size() == static_cast<std::size_t>(cfg.population_size)) break;
    }
    population = std::move(next);
    fronts = nondominated_sort(population);
    refresh_rank_crowd();
  }

  // Final pick: weighted normalized objectives, ties to the earliest index.
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < population.size(); ++i) {
    const double score =
        cfg.alpha * static_cast<double>(population[i].coverage) / static_cast<double>(num_tasks) -
        (1.0 - cfg.alpha) * static_cast<double>(population[i].max_activation) /
            static_cast<double>(campaign_periods);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }

  const Individual& winner = population[best];
  out.residual_uncovered.clear();
  DynBitset covered(num_tasks);
  for (std::size_t w = 0; w < num_workers; ++w) {
    if (!winner.genome.test(w)) continue;
    out.selected.push_back(dc.rows[w].worker);
    for (const auto& e : dc.rows[w].entries) {
      if (covered.test(static_cast<std::size_t>(e.task))) continue;
      covered.set(static_cast<std::size_t>(e.task));
      out.covered.push_back({dc.task_ids[static_cast<std::size_t>(e.task)], dc.rows[w].worker, e.utility});
    }
  }
  for (std::size_t t = 0; t < num_tasks; ++t)
    if (!covered.test(t)) out.residual_uncovered.push_back(dc.task_ids[t]);
  return out;
}

}  // namespace hypersc
