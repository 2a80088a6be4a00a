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

// Discrete-time campaign runners. One replay drives all online strategies:
// per period it advances the carried task pool, builds the coverage instance
// set, hands it to a selector, credits covered tasks (first coverer fixes
// the utility) and retires them from the pool. Per-period wall time is
// measured around exactly that pipeline, never around instance generation.
//
// Selectors:
//   fixed plan    greedy_select with the period's planned budget
//   fixed + MOO   nsga_select (coverage vs. worker overload)
//   naive         greedy_select with all remaining campaign budget
//   adapt         contextual epsilon-greedy stop rule per candidate:
//                 delta_budget = cumulative baseline - spend (whole remainder
//                 in the final period), delta_gain = candidate gain - running
//                 average; a uniform draw below the quadrant's stop
//                 probability ends the period's allocation.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hypersc/budget.hpp"
#include "hypersc/coverage.hpp"
#include "hypersc/grid.hpp"
#include "hypersc/heuristics.hpp"
#include "hypersc/model.hpp"
#include "hypersc/moo.hpp"
#include "hypersc/rng.hpp"

namespace hypersc {

struct PeriodStats {
  int period = 0;
  std::vector<WorkerId> selected;
  long long covered_count = 0;
  double utility = 0.0;
  double runtime_ms = 0.0;
  long long budget_spent = 0;
  long long active_tasks = 0;
  long long deferred_tasks = 0;
  long long unassignable_tasks = 0;
};

struct CampaignResult {
  std::uint64_t instance_digest = 0;
  int num_periods = 0;
  std::vector<PeriodStats> periods;
  std::vector<CoveredAssignment> covered;
  long long total_coverage = 0;
  double total_utility = 0.0;
  std::map<WorkerId, long long> activations;

  long long total_selected() const {
    long long n = 0;
    for (const auto& p : periods) n += static_cast<long long>(p.selected.size());
    return n;
  }

  long long max_activations() const {
    long long m = 0;
    for (const auto& [w, c] : activations) m = std::max(m, c);
    return m;
  }

  // Mean activation count among workers activated at least once.
  double mean_activations() const {
    if (activations.empty()) return 0.0;
    long long sum = 0;
    for (const auto& [w, c] : activations) sum += c;
    return static_cast<double>(sum) / static_cast<double>(activations.size());
  }

  double total_runtime_ms() const {
    double t = 0.0;
    for (const auto& p : periods) t += p.runtime_ms;
    return t;
  }

  std::vector<std::pair<WorkerId, int>> selected_pairs() const {
    std::vector<std::pair<WorkerId, int>> out;
    for (const auto& p : periods)
      for (WorkerId w : p.selected) out.emplace_back(w, p.period);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<long long> per_period_selected_counts() const {
    std::vector<long long> out(static_cast<std::size_t>(num_periods) + 1, 0);
    for (const auto& p : periods)
      out[static_cast<std::size_t>(p.period)] = static_cast<long long>(p.selected.size());
    return out;
  }
};

struct RunOptions {
  HeuristicKind heuristic = HeuristicKind::kBasic;
  UtilityModel utility = UtilityModel::binary();
  double grid_cell_size = 1.0;
  // Spatial heuristic history: by default the campaign's own arrivals from
  // strictly earlier periods; an external grid (training data) overrides.
  const EntropyGrid* external_entropy = nullptr;
  GainAveraging averaging = GainAveraging::kPeriodDecay;
};

namespace detail {

// Streams an instance period by period, maintaining the uncovered pool.
class CampaignReplay {
 public:
  CampaignReplay(const CampaignInstance& instance, const RunOptions& options)
      : instance_(instance), options_(options), lookup_(instance.tasks) {
    if (instance.num_periods < 1) throw InstanceError("campaign has no periods");
    if (options.heuristic == HeuristicKind::kSpatial && options.external_entropy == nullptr)
      own_entropy_ = std::make_unique<EntropyGrid>(instance.area, options.grid_cell_size);
  }

  const TaskLookup& lookup() const { return lookup_; }
  int num_periods() const { return instance_.num_periods; }

  PriorityModel priority_model() const {
    PriorityModel model;
    model.kind = options_.heuristic;
    model.utility = options_.utility;
    model.entropy = options_.external_entropy != nullptr ? options_.external_entropy
                                                         : own_entropy_.get();
    return model;
  }

  struct Period {
    PeriodSnapshot snapshot;
    CoverageInstanceSet coverage;
  };

  // Builds period `i` (must be called with 1, 2, ... in order).
  Period advance(int period) {
    // Entropy history: fold in the previous period's arrivals only, so the
    // current period is never visible to its own priorities.
    if (own_entropy_ && !previous_workers_.empty())
      own_entropy_->add_arrivals(previous_workers_);

    std::vector<WorkerArrival> workers;
    while (arrival_cursor_ < instance_.arrivals.size() &&
           instance_.arrivals[arrival_cursor_].period == period)
      workers.push_back(instance_.arrivals[arrival_cursor_++]);

    std::vector<TaskId> released;
    while (task_cursor_ < instance_.tasks.size() &&
           instance_.tasks[task_cursor_].release_period == period)
      released.push_back(instance_.tasks[task_cursor_++].id);

    Period out;
    if (instance_.is_explicit()) {
      out = explicit_period(period, released);
    } else {
      out.snapshot =
          advance_period(pool_, released, period, workers, lookup_, options_.grid_cell_size);
      out.coverage = compute_coverage(out.snapshot, lookup_, options_.grid_cell_size);
    }
    pool_ = out.snapshot.eligible;
    previous_workers_ = out.snapshot.workers;
    return out;
  }

  // Removes covered tasks from the carried pool.
  void mark_covered(const std::vector<CoveredAssignment>& assignments) {
    if (assignments.empty()) return;
    std::unordered_set<TaskId> gone;
    gone.reserve(assignments.size());
    for (const auto& a : assignments) gone.insert(a.task);
    pool_.erase(std::remove_if(pool_.begin(), pool_.end(),
                               [&gone](TaskId t) { return gone.count(t) > 0; }),
                pool_.end());
  }

 private:
  Period explicit_period(int period, const std::vector<TaskId>& released) {
    Period out;
    out.snapshot.period = period;
    out.coverage.period = period;
    std::vector<TaskId> eligible = pool_;
    for (TaskId t : released) eligible.push_back(t);
    std::sort(eligible.begin(), eligible.end());
    eligible.erase(std::unique(eligible.begin(), eligible.end()), eligible.end());
    std::vector<TaskId> keep;
    for (TaskId t : eligible)
      if (lookup_.at(t).answerable_at(period)) keep.push_back(t);
    out.snapshot.eligible = std::move(keep);

    std::unordered_set<TaskId> active_set;
    for (const auto& rec : instance_.explicit_coverage) {
      if (rec.period != period) continue;
      out.snapshot.workers.push_back({rec.worker, period, Point{}});
      std::vector<CoveredTask> row;
      for (TaskId t : rec.tasks) {
        const bool eligible_now =
            std::binary_search(out.snapshot.eligible.begin(), out.snapshot.eligible.end(), t);
        if (!eligible_now) continue;
        row.push_back({t, 0.0});
        active_set.insert(t);
      }
      std::sort(row.begin(), row.end(),
                [](const CoveredTask& a, const CoveredTask& b) { return a.task < b.task; });
      out.coverage.coverage.emplace_back(rec.worker, std::move(row));
    }
    std::sort(out.snapshot.workers.begin(), out.snapshot.workers.end(),
              [](const WorkerArrival& a, const WorkerArrival& b) { return a.worker_id < b.worker_id; });
    std::sort(out.coverage.coverage.begin(), out.coverage.coverage.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.snapshot.active.assign(active_set.begin(), active_set.end());
    std::sort(out.snapshot.active.begin(), out.snapshot.active.end());
    for (TaskId t : out.snapshot.eligible)
      if (lookup_.at(t).release_period < period) ++out.snapshot.deferred_count;
    out.snapshot.no_worker_count =
        static_cast<int>(out.snapshot.eligible.size() - out.snapshot.active.size());
    return out;
  }

  const CampaignInstance& instance_;
  RunOptions options_;
  TaskLookup lookup_;
  std::vector<TaskId> pool_;
  std::vector<WorkerArrival> previous_workers_;
  std::unique_ptr<EntropyGrid> own_entropy_;
  std::size_t arrival_cursor_ = 0;
  std::size_t task_cursor_ = 0;
};

inline void record_selection(CampaignResult& result, PeriodStats& stats,
                             const SelectionOutcome& outcome, ActivationLedger& ledger) {
  stats.selected = outcome.selected;
  stats.budget_spent = static_cast<long long>(outcome.selected.size());
  stats.covered_count = static_cast<long long>(outcome.covered.size());
  for (const auto& a : outcome.covered) stats.utility += a.utility;
  for (WorkerId w : outcome.selected) ledger.record(w);
  result.covered.insert(result.covered.end(), outcome.covered.begin(), outcome.covered.end());
  result.total_coverage += stats.covered_count;
  result.total_utility += stats.utility;
}

class PeriodTimer {
 public:
  PeriodTimer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    const auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Fixed per-period budgets; one greedy_select per period.
inline CampaignResult run_fixed_plan(const CampaignInstance& instance, const BudgetPlan& plan,
                                     const RunOptions& options = {}) {
  if (static_cast<int>(plan.per_period.size()) != instance.num_periods)
    throw ConfigError("fixed plan length does not match the campaign");
  detail::CampaignReplay replay(instance, options);
  CampaignResult result;
  result.instance_digest = instance.digest();
  result.num_periods = instance.num_periods;
  ActivationLedger ledger;
  for (int i = 1; i <= instance.num_periods; ++i) {
    detail::PeriodTimer timer;
    auto period = replay.advance(i);
    PeriodStats stats;
    stats.period = i;
    stats.active_tasks = static_cast<long long>(period.snapshot.active.size());
    stats.deferred_tasks = period.snapshot.deferred_count;
    stats.unassignable_tasks = period.snapshot.no_worker_count;
    const auto outcome =
        greedy_select(period.coverage, period.snapshot.active,
                      plan.per_period[static_cast<std::size_t>(i - 1)], replay.priority_model(), i,
                      replay.lookup());
    detail::record_selection(result, stats, outcome, ledger);
    replay.mark_covered(outcome.covered);
    stats.runtime_ms = timer.elapsed_ms();
    result.periods.push_back(std::move(stats));
  }
  result.activations = ledger.snapshot();
  return result;
}

// Fixed budgets with the two-objective genetic selector per period.
inline CampaignResult run_fixed_nsga(const CampaignInstance& instance, const BudgetPlan& plan,
                                     const NsgaConfig& nsga, std::uint64_t seed,
                                     const RunOptions& options = {}) {
  if (static_cast<int>(plan.per_period.size()) != instance.num_periods)
    throw ConfigError("fixed plan length does not match the campaign");
  detail::CampaignReplay replay(instance, options);
  CampaignResult result;
  result.instance_digest = instance.digest();
  result.num_periods = instance.num_periods;
  ActivationLedger ledger;
  for (int i = 1; i <= instance.num_periods; ++i) {
    detail::PeriodTimer timer;
    auto period = replay.advance(i);
    PeriodStats stats;
    stats.period = i;
    stats.active_tasks = static_cast<long long>(period.snapshot.active.size());
    stats.deferred_tasks = period.snapshot.deferred_count;
    stats.unassignable_tasks = period.snapshot.no_worker_count;
    const auto outcome = nsga_select(period.coverage, period.snapshot.active,
                                     plan.per_period[static_cast<std::size_t>(i - 1)], ledger, nsga,
                                     derive_seed(seed, static_cast<std::uint64_t>(i)),
                                     replay.lookup(), instance.num_periods, options.utility);
    detail::record_selection(result, stats, outcome, ledger);
    replay.mark_covered(outcome.covered);
    stats.runtime_ms = timer.elapsed_ms();
    result.periods.push_back(std::move(stats));
  }
  result.activations = ledger.snapshot();
  return result;
}

// First-come-first-serve: every period may burn all remaining budget.
inline CampaignResult run_naive(const CampaignInstance& instance, long long total,
                                const RunOptions& options = {}) {
  detail::CampaignReplay replay(instance, options);
  CampaignResult result;
  result.instance_digest = instance.digest();
  result.num_periods = instance.num_periods;
  ActivationLedger ledger;
  long long used = 0;
  for (int i = 1; i <= instance.num_periods; ++i) {
    detail::PeriodTimer timer;
    auto period = replay.advance(i);
    PeriodStats stats;
    stats.period = i;
    stats.active_tasks = static_cast<long long>(period.snapshot.active.size());
    stats.deferred_tasks = period.snapshot.deferred_count;
    stats.unassignable_tasks = period.snapshot.no_worker_count;
    const auto outcome = greedy_select(period.coverage, period.snapshot.active, total - used,
                                       replay.priority_model(), i, replay.lookup());
    used += static_cast<long long>(outcome.selected.size());
    detail::record_selection(result, stats, outcome, ledger);
    replay.mark_covered(outcome.covered);
    stats.runtime_ms = timer.elapsed_ms();
    result.periods.push_back(std::move(stats));
  }
  result.activations = ledger.snapshot();
  return result;
}

struct AdaptOptions {
  // When set, candidate gains become the overload-penalized combination of
  // priority and activation count instead of the raw priority.
  std::optional<double> moo_alpha;
};

// Adaptive allocation of one campaign budget (contextual epsilon-greedy).
inline CampaignResult run_adapt(const CampaignInstance& instance, long long total,
                                const EpsilonTable& eps, const BudgetPlan& baseline,
                                std::uint64_t seed, const RunOptions& options = {},
                                const AdaptOptions& adapt = {}) {
  eps.validate();
  if (static_cast<int>(baseline.per_period.size()) != instance.num_periods)
    throw ConfigError("adaptive baseline length does not match the campaign");
  if (std::accumulate(baseline.per_period.begin(), baseline.per_period.end(), 0LL) != total)
    throw ConfigError("adaptive baseline does not sum to the campaign budget");
  if (adapt.moo_alpha && (*adapt.moo_alpha <= 0.0 || *adapt.moo_alpha > 1.0))
    throw ConfigError("adaptive overload alpha must lie in (0,1]");

  detail::CampaignReplay replay(instance, options);
  CampaignResult result;
  result.instance_digest = instance.digest();
  result.num_periods = instance.num_periods;
  ActivationLedger ledger;
  Rng rng(derive_seed(seed, kStreamAllocator));

  const int num_periods = instance.num_periods;
  long long used = 0;
  double mean_gain = 0.0;         // lambda-bar
  double accepted_sum = 0.0;      // kAcceptedMean state
  long long accepted_count = 0;
  long long cumulative_baseline = 0;

  for (int i = 1; i <= num_periods; ++i) {
    cumulative_baseline += baseline.per_period[static_cast<std::size_t>(i - 1)];
    detail::PeriodTimer timer;
    auto period = replay.advance(i);
    PeriodStats stats;
    stats.period = i;
    stats.active_tasks = static_cast<long long>(period.snapshot.active.size());
    stats.deferred_tasks = period.snapshot.deferred_count;
    stats.unassignable_tasks = period.snapshot.no_worker_count;

    const auto model = replay.priority_model();
    const auto dc = detail::DenseCoverage::build(period.coverage, period.snapshot.active, model, i,
                                                 replay.lookup());
    DynBitset uncovered(dc.task_ids.size());
    for (std::size_t t = 0; t < dc.task_ids.size(); ++t) uncovered.set(t);
    std::vector<char> taken(dc.rows.size(), 0);

    const long long period_cap = total - used;
    long long delta_budget = (i == num_periods) ? period_cap : cumulative_baseline - used;
    const long long tasks_in_period = stats.active_tasks;

    SelectionOutcome outcome;
    double last_gain = 0.0;
    while (static_cast<long long>(outcome.selected.size()) < period_cap && uncovered.any()) {
      // Highest-gain candidate; gain is the heuristic priority, optionally
      // overload-penalized. Ties to the smallest worker id.
      int pick = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (std::size_t w = 0; w < dc.rows.size(); ++w) {
        if (taken[w]) continue;
        const double priority = dc.priority(dc.rows[w], uncovered);
        if (priority <= 0.0) continue;  // nothing new to cover
        const double gain = adapt.moo_alpha
                                ? moo_gain(priority, ledger.count(dc.rows[w].worker),
                                           *adapt.moo_alpha, tasks_in_period, num_periods)
                                : priority;
        // Rows are id-sorted, so strict > keeps the smallest worker id on ties.
        if (gain > best_gain) {
          best_gain = gain;
          pick = static_cast<int>(w);
        }
      }
      if (pick < 0) break;            // no candidate covers anything new
      if (best_gain <= 0.0) break;    // overload outweighs every candidate (moo only)

      last_gain = best_gain;
      const double delta_gain = best_gain - mean_gain;
      const double draw = rng.uniform01();
      if (draw < eps.at(delta_gain > 0.0, delta_budget > 0)) break;

      delta_budget -= 1;
      taken[static_cast<std::size_t>(pick)] = 1;
      const auto& row = dc.rows[static_cast<std::size_t>(pick)];
      outcome.selected.push_back(row.worker);
      for (const auto& e : row.entries) {
        if (!uncovered.test(static_cast<std::size_t>(e.task))) continue;
        uncovered.reset(static_cast<std::size_t>(e.task));
        outcome.covered.push_back({dc.task_ids[static_cast<std::size_t>(e.task)], row.worker, e.utility});
      }
      ++used;
      if (options.averaging == GainAveraging::kAcceptedMean) {
        accepted_sum += best_gain;
        ++accepted_count;
        mean_gain = accepted_sum / static_cast<double>(accepted_count);
      }
    }

    if (options.averaging == GainAveraging::kPeriodDecay)
      mean_gain = (mean_gain * (num_periods - 1) + last_gain) / num_periods;

    detail::record_selection(result, stats, outcome, ledger);
    replay.mark_covered(outcome.covered);
    stats.runtime_ms = timer.elapsed_ms();
    result.periods.push_back(std::move(stats));
  }
  result.activations = ledger.snapshot();
  return result;
}

}  // namespace hypersc
