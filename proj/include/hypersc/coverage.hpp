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

// Per-period coverage instance construction. A worker covers a task when the
// period is inside the task's answerable window and the worker lies inside
// the task's disk (inclusive). Uncovered, unexpired tasks carry over between
// periods; a task that encloses no worker in some period stays in the carried
// pool and can become active again later.

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "hypersc/grid.hpp"
#include "hypersc/model.hpp"

namespace hypersc {

// Builds the period's coverage instance set from geometry. Workers covering
// nothing are kept with empty rows. Deterministic: rows sorted by worker id,
// row contents by task id.
inline CoverageInstanceSet compute_coverage(const PeriodSnapshot& snapshot,
                                            const TaskLookup& tasks,
                                            double index_cell_size = 1.0) {
  CoverageInstanceSet out;
  out.period = snapshot.period;
  out.coverage.reserve(snapshot.workers.size());
  for (const auto& w : snapshot.workers) out.coverage.emplace_back(w.worker_id, std::vector<CoveredTask>{});
  std::sort(out.coverage.begin(), out.coverage.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  if (snapshot.workers.empty() || snapshot.active.empty()) return out;

  Point origin = snapshot.workers.front().location;
  for (const auto& w : snapshot.workers) {
    origin.x = std::min(origin.x, w.location.x);
    origin.y = std::min(origin.y, w.location.y);
  }
  GridIndex index(origin, index_cell_size);
  for (std::size_t i = 0; i < snapshot.workers.size(); ++i)
    index.insert(static_cast<int>(i), snapshot.workers[i].location);

  for (TaskId id : snapshot.active) {
    const TaskSpec& task = tasks.at(id);
    if (!task.answerable_at(snapshot.period)) continue;
    for (int wi : index.query_disk(task.location, task.radius)) {
      const auto& worker = snapshot.workers[static_cast<std::size_t>(wi)];
      auto row = std::lower_bound(out.coverage.begin(), out.coverage.end(), worker.worker_id,
                                  [](const auto& r, WorkerId wid) { return r.first < wid; });
      row->second.push_back({id, distance(worker.location, task.location)});
    }
  }
  for (auto& row : out.coverage)
    std::sort(row.second.begin(), row.second.end(),
              [](const CoveredTask& a, const CoveredTask& b) { return a.task < b.task; });
  return out;
}

// Advances the carried task pool into a new period snapshot.
//   eligible = still-answerable previous uncovered + tasks released now
//   active   = eligible tasks enclosing at least one of this period's workers
inline PeriodSnapshot advance_period(const std::vector<TaskId>& previous_uncovered,
                                     const std::vector<TaskId>& released_now,
                                     int period,
                                     std::vector<WorkerArrival> workers,
                                     const TaskLookup& tasks,
                                     double index_cell_size = 1.0) {
  PeriodSnapshot snap;
  snap.period = period;
  std::sort(workers.begin(), workers.end(),
            [](const WorkerArrival& a, const WorkerArrival& b) { return a.worker_id < b.worker_id; });
  snap.workers = std::move(workers);

  for (TaskId id : previous_uncovered) {
    if (tasks.at(id).answerable_at(period)) snap.eligible.push_back(id);
  }
  for (TaskId id : released_now) {
    if (tasks.at(id).answerable_at(period)) snap.eligible.push_back(id);
  }
  std::sort(snap.eligible.begin(), snap.eligible.end());
  snap.eligible.erase(std::unique(snap.eligible.begin(), snap.eligible.end()), snap.eligible.end());

  for (TaskId id : snap.eligible)
    if (tasks.at(id).release_period < period) ++snap.deferred_count;

  if (!snap.workers.empty() && !snap.eligible.empty()) {
    Point origin = snap.workers.front().location;
    for (const auto& w : snap.workers) {
      origin.x = std::min(origin.x, w.location.x);
      origin.y = std::min(origin.y, w.location.y);
    }
    GridIndex index(origin, index_cell_size);
    for (std::size_t i = 0; i < snap.workers.size(); ++i)
      index.insert(static_cast<int>(i), snap.workers[i].location);
    for (TaskId id : snap.eligible) {
      const TaskSpec& task = tasks.at(id);
      if (!index.query_disk(task.location, task.radius).empty()) snap.active.push_back(id);
    }
  }
  snap.no_worker_count = static_cast<int>(snap.eligible.size() - snap.active.size());
  return snap;
}

}  // namespace hypersc
