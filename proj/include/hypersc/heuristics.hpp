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

// Worker priority models and the per-period greedy selector.
//
// A worker's priority is a sum over the uncovered tasks it covers; with f the
// utility of the worker-task distance:
//   Basic      f
//   Temporal   f / (deadline - period)       urgency-weighted
//   Spatial    f / (1 + region_entropy)      worker-sparsity-weighted
// Under binary utility these are the plain count, inverse-remaining-time, and
// inverse-entropy forms. The greedy selector repeatedly takes the positive-
// gain argmax (ties to the smallest worker id), so runs are reproducible.
// Tasks are single-assignment: the first covering worker fixes the utility.

#pragma once

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "hypersc/bitset.hpp"
#include "hypersc/errors.hpp"
#include "hypersc/grid.hpp"
#include "hypersc/model.hpp"
#include "hypersc/utility.hpp"

namespace hypersc {

enum class HeuristicKind { kBasic, kTemporal, kSpatial };

inline const char* heuristic_name(HeuristicKind k) {
  switch (k) {
    case HeuristicKind::kBasic: return "basic";
    case HeuristicKind::kTemporal: return "temporal";
    case HeuristicKind::kSpatial: return "spatial";
  }
  return "?";
}

struct PriorityModel {
  HeuristicKind kind = HeuristicKind::kBasic;
  UtilityModel utility;
  const EntropyGrid* entropy = nullptr;  // required for kSpatial

  static PriorityModel basic(UtilityModel u = UtilityModel::binary()) {
    return {HeuristicKind::kBasic, u, nullptr};
  }
  static PriorityModel temporal(UtilityModel u = UtilityModel::binary()) {
    return {HeuristicKind::kTemporal, u, nullptr};
  }
  static PriorityModel spatial(const EntropyGrid* grid, UtilityModel u = UtilityModel::binary()) {
    return {HeuristicKind::kSpatial, u, grid};
  }
};

// Priority contribution of one covered task, before residual-set filtering.
inline double pair_weight(const PriorityModel& model, const TaskSpec& task, double dist, int period) {
  const double f = task_utility(model.utility, dist, task.radius);
  switch (model.kind) {
    case HeuristicKind::kBasic:
      return f;
    case HeuristicKind::kTemporal: {
      const int remaining = task.deadline() - period;
      if (remaining <= 0)
        throw std::logic_error("expired task in residual set during priority evaluation");
      return f / static_cast<double>(remaining);
    }
    case HeuristicKind::kSpatial: {
      if (model.entropy == nullptr) throw ModelError("spatial heuristic requires an entropy grid");
      return f / (1.0 + model.entropy->region_entropy(task.location, task.radius));
    }
  }
  return 0.0;
}

// priority(w) = sum of pair weights over C(w) intersected with the residual
// uncovered set R. Tasks outside R contribute nothing.
inline double worker_priority(const PriorityModel& model, WorkerId worker,
                              const CoverageInstanceSet& coverage,
                              const std::unordered_set<TaskId>& uncovered, int period,
                              const TaskLookup& tasks) {
  const auto* row = coverage.find(worker);
  if (row == nullptr) throw InstanceError("worker not present in coverage instance set");
  double total = 0.0;
  for (const auto& ct : *row) {
    if (!uncovered.count(ct.task)) continue;
    total += pair_weight(model, tasks.at(ct.task), ct.distance, period);
  }
  return total;
}

struct CoveredAssignment {
  TaskId task = 0;
  WorkerId worker = 0;
  double utility = 0.0;
};

struct SelectionOutcome {
  std::vector<WorkerId> selected;             // greedy order L_i
  std::vector<CoveredAssignment> covered;     // each task credited once
  std::vector<TaskId> residual_uncovered;     // U_i, sorted
};

namespace detail {

// Dense per-period view shared by the greedy selector, the adaptive
// allocator and the genetic selector: active tasks renumbered to [0, m),
// coverage rows as (dense task, priority weight, credit utility) triples.
struct DenseCoverage {
  std::vector<TaskId> task_ids;  // dense -> id
  struct Entry {
    int task = 0;
    double weight = 0.0;   // priority contribution
    double utility = 0.0;  // credited on assignment
  };
  struct Row {
    WorkerId worker = 0;
    std::vector<Entry> entries;
    DynBitset covers;
  };
  std::vector<Row> rows;  // sorted by worker id

  static DenseCoverage build(const CoverageInstanceSet& coverage,
                             const std::vector<TaskId>& active, const PriorityModel& model,
                             int period, const TaskLookup& tasks) {
    DenseCoverage dc;
    dc.task_ids = active;
    std::sort(dc.task_ids.begin(), dc.task_ids.end());
    std::unordered_map<TaskId, int> dense;
    dense.reserve(dc.task_ids.size());
    for (std::size_t i = 0; i < dc.task_ids.size(); ++i)
      dense.emplace(dc.task_ids[i], static_cast<int>(i));
    dc.rows.reserve(coverage.coverage.size());
    for (const auto& [worker, covered] : coverage.coverage) {
      Row row;
      row.worker = worker;
      row.covers = DynBitset(dc.task_ids.size());
      for (const auto& ct : covered) {
        auto it = dense.find(ct.task);
        if (it == dense.end()) continue;  // task not active (already covered)
        const TaskSpec& task = tasks.at(ct.task);
        row.entries.push_back({it->second, pair_weight(model, task, ct.distance, period),
                               task_utility(model.utility, ct.distance, task.radius)});
        row.covers.set(static_cast<std::size_t>(it->second));
      }
      dc.rows.push_back(std::move(row));
    }
    return dc;
  }

  double priority(const Row& row, const DynBitset& uncovered) const {
    double total = 0.0;
    for (const auto& e : row.entries)
      if (uncovered.test(static_cast<std::size_t>(e.task))) total += e.weight;
    return total;
  }

  // Positive-gain argmax over unselected rows; ties to the smallest worker
  // id (rows are id-sorted, strict > keeps the first). Returns -1 if none.
  int best_row(const DynBitset& uncovered, const std::vector<char>& taken,
               double* best_priority) const {
    int best = -1;
    double best_value = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (taken[i]) continue;
      const double value = priority(rows[i], uncovered);
      if (value > best_value) {
        best_value = value;
        best = static_cast<int>(i);
      }
    }
    *best_priority = best_value;
    return best;
  }
};

}  // namespace detail

// Algorithm: while budget remains and some worker has positive gain, select
// the highest-priority worker and retire its covered tasks from the residual
// set. Zero-gain workers are never selected.
inline SelectionOutcome greedy_select(const CoverageInstanceSet& coverage,
                                      const std::vector<TaskId>& active, long long budget,
                                      const PriorityModel& model, int period,
                                      const TaskLookup& tasks) {
  const auto dc = detail::DenseCoverage::build(coverage, active, model, period, tasks);
  DynBitset uncovered(dc.task_ids.size());
  for (std::size_t i = 0; i < dc.task_ids.size(); ++i) uncovered.set(i);
  std::vector<char> taken(dc.rows.size(), 0);

  SelectionOutcome out;
  while (static_cast<long long>(out.selected.size()) < budget && uncovered.any()) {
    double best_priority = 0.0;
    const int pick = dc.best_row(uncovered, taken, &best_priority);
    if (pick < 0) break;  // no positive gain left
    taken[static_cast<std::size_t>(pick)] = 1;
    const auto& row = dc.rows[static_cast<std::size_t>(pick)];
    out.selected.push_back(row.worker);
    for (const auto& e : row.entries) {
      if (!uncovered.test(static_cast<std::size_t>(e.task))) continue;
      uncovered.reset(static_cast<std::size_t>(e.task));
      out.covered.push_back({dc.task_ids[static_cast<std::size_t>(e.task)], row.worker, e.utility});
    }
  }
  for (std::size_t i = 0; i < dc.task_ids.size(); ++i)
    if (uncovered.test(i)) out.residual_uncovered.push_back(dc.task_ids[i]);
  return out;
}

}  // namespace hypersc
