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

// Campaign data model: tasks, worker arrivals, and whole-campaign instances.
// Periods are 1-based. A task released at period s with duration d is
// answerable during periods s .. s+d-1; s+d is its (exclusive) deadline.
// Instances are immutable once validated and safe to share across threads.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypersc/errors.hpp"
#include "hypersc/geometry.hpp"

namespace hypersc {

using TaskId = std::int64_t;
using WorkerId = std::int64_t;

struct TaskSpec {
  TaskId id = 0;
  Point location;
  double radius = 0.0;     // km
  int release_period = 1;  // s
  int duration = 1;        // number of answerable periods

  int deadline() const { return release_period + duration; }
  bool answerable_at(int period) const {
    return period >= release_period && period < deadline();
  }
};

struct WorkerArrival {
  WorkerId worker_id = 0;
  int period = 1;
  Point location;
};

// Explicit per-period coverage record; lets fixtures state worker->task
// coverage directly instead of through geometry.
struct ExplicitCoverage {
  int period = 1;
  WorkerId worker = 0;
  std::vector<TaskId> tasks;
};

struct CampaignInstance {
  int num_periods = 0;
  Rect area;
  std::vector<TaskSpec> tasks;          // sorted by (release_period, id)
  std::vector<WorkerArrival> arrivals;  // sorted by (period, worker_id)
  std::vector<ExplicitCoverage> explicit_coverage;

  bool is_explicit() const { return !explicit_coverage.empty(); }

  void sort_for_replay() {
    std::sort(tasks.begin(), tasks.end(), [](const TaskSpec& a, const TaskSpec& b) {
      if (a.release_period != b.release_period) return a.release_period < b.release_period;
      return a.id < b.id;
    });
    std::sort(arrivals.begin(), arrivals.end(),
              [](const WorkerArrival& a, const WorkerArrival& b) {
                if (a.period != b.period) return a.period < b.period;
                return a.worker_id < b.worker_id;
              });
    std::sort(explicit_coverage.begin(), explicit_coverage.end(),
              [](const ExplicitCoverage& a, const ExplicitCoverage& b) {
                if (a.period != b.period) return a.period < b.period;
                return a.worker < b.worker;
              });
  }

  void validate() const {
    if (num_periods < 1) throw InstanceError("campaign needs at least one period");
    if (!area.valid()) throw InstanceError("campaign area is degenerate");
    std::unordered_map<TaskId, int> seen_task;
    for (const auto& t : tasks) {
      if (t.radius <= 0.0) throw InstanceError("task " + std::to_string(t.id) + ": radius must be positive");
      if (t.duration < 1) throw InstanceError("task " + std::to_string(t.id) + ": duration must be >= 1");
      if (t.release_period < 1 || t.release_period > num_periods)
        throw InstanceError("task " + std::to_string(t.id) + ": release period out of range");
      if (++seen_task[t.id] > 1) throw InstanceError("duplicate task id " + std::to_string(t.id));
    }
    std::unordered_map<std::uint64_t, int> seen_arrival;
    for (const auto& w : arrivals) {
      if (w.period < 1 || w.period > num_periods)
        throw InstanceError("worker " + std::to_string(w.worker_id) + ": period out of range");
      if (!is_explicit() && !area.contains(w.location))
        throw InstanceError("worker " + std::to_string(w.worker_id) + ": location outside area");
      const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(w.period)) << 32) ^
                                static_cast<std::uint64_t>(w.worker_id);
      if (++seen_arrival[key] > 1)
        throw InstanceError("worker " + std::to_string(w.worker_id) + " appears twice in period " +
                            std::to_string(w.period));
    }
  }

  // Content digest; lets results remember which instance produced them.
  std::uint64_t digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
    };
    auto mixd = [&mix](double d) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(d));
      __builtin_memcpy(&bits, &d, sizeof(bits));
      mix(bits);
    };
    mix(static_cast<std::uint64_t>(num_periods));
    mixd(area.xmin); mixd(area.ymin); mixd(area.xmax); mixd(area.ymax);
    for (const auto& t : tasks) {
      mix(static_cast<std::uint64_t>(t.id));
      mixd(t.location.x); mixd(t.location.y); mixd(t.radius);
      mix(static_cast<std::uint64_t>(t.release_period));
      mix(static_cast<std::uint64_t>(t.duration));
    }
    for (const auto& w : arrivals) {
      mix(static_cast<std::uint64_t>(w.worker_id));
      mix(static_cast<std::uint64_t>(w.period));
      mixd(w.location.x); mixd(w.location.y);
    }
    for (const auto& c : explicit_coverage) {
      mix(static_cast<std::uint64_t>(c.period));
      mix(static_cast<std::uint64_t>(c.worker));
      for (TaskId t : c.tasks) mix(static_cast<std::uint64_t>(t));
    }
    return h;
  }
};

// Id -> TaskSpec resolution for one instance.
class TaskLookup {
 public:
  TaskLookup() = default;
  explicit TaskLookup(const std::vector<TaskSpec>& tasks) {
    by_id_.reserve(tasks.size());
    for (const auto& t : tasks) by_id_.emplace(t.id, &t);
  }

  const TaskSpec& at(TaskId id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
      throw InstanceError("unresolvable task id " + std::to_string(id));
    return *it->second;
  }

  const TaskSpec* find(TaskId id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : it->second;
  }

 private:
  std::unordered_map<TaskId, const TaskSpec*> by_id_;
};

// One period of the campaign as the online algorithms see it. `eligible` is
// the carried pool of unexpired, not-yet-covered tasks; `active` (the paper's
// T_i') additionally requires at least one enclosing worker this period.
struct PeriodSnapshot {
  int period = 0;
  std::vector<WorkerArrival> workers;  // W_i, sorted by worker_id
  std::vector<TaskId> eligible;        // sorted
  std::vector<TaskId> active;          // sorted, subset of eligible
  int deferred_count = 0;              // eligible tasks released before this period
  int no_worker_count = 0;             // eligible but unassignable this period
};

struct CoveredTask {
  TaskId task = 0;
  double distance = 0.0;  // worker-task distance; 0 for explicit instances
};

// Per-period bipartite coverage map. Every worker of the snapshot appears,
// possibly with an empty row. Rows and row contents are sorted by id.
struct CoverageInstanceSet {
  int period = 0;
  std::vector<std::pair<WorkerId, std::vector<CoveredTask>>> coverage;

  const std::vector<CoveredTask>* find(WorkerId w) const {
    auto it = std::lower_bound(coverage.begin(), coverage.end(), w,
                               [](const auto& row, WorkerId id) { return row.first < id; });
    if (it == coverage.end() || it->first != w) return nullptr;
    return &it->second;
  }
};

}  // namespace hypersc
