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

// Shared test fixtures: the two-period six-task micro campaign (in geometric
// and explicit-coverage form) and small random instances for oracle sweeps.

#pragma once

#include <vector>

#include "hypersc/model.hpp"
#include "hypersc/rng.hpp"

namespace hypersc::testing {

// Geometric encoding of the reference micro campaign. Period 1: worker 1
// covers {1,2,3}, worker 2 covers {1,4,5,6}. Period 2: worker 1 (returned at
// a new spot) covers {5,6}. All tasks live for periods 1-2.
inline CampaignInstance toy_geometric() {
  CampaignInstance instance;
  instance.num_periods = 2;
  instance.area = {-3.0, -3.0, 10.0, 3.0};
  instance.tasks = {
      {1, {2.0, 0.0}, 2.5, 1, 2}, {2, {0.0, 1.0}, 1.5, 1, 2}, {3, {-1.0, 0.0}, 1.2, 1, 2},
      {4, {4.0, 1.0}, 1.4, 1, 2}, {5, {6.0, 0.0}, 2.5, 1, 2}, {6, {6.5, 0.0}, 3.0, 1, 2},
  };
  instance.arrivals = {
      {1, 1, {0.0, 0.0}},
      {2, 1, {4.0, 0.0}},
      {1, 2, {8.0, 0.0}},
  };
  instance.sort_for_replay();
  instance.validate();
  return instance;
}

// The same campaign stated directly as coverage sets.
inline CampaignInstance toy_explicit() {
  CampaignInstance instance;
  instance.num_periods = 2;
  instance.area = {-1.0, -1.0, 1.0, 1.0};
  instance.explicit_coverage = {
      {1, 1, {1, 2, 3}},
      {1, 2, {1, 4, 5, 6}},
      {2, 1, {5, 6}},
  };
  for (TaskId id = 1; id <= 6; ++id) {
    const int first = 1;
    const int last = (id >= 5) ? 2 : 1;
    instance.tasks.push_back({id, {0.0, 0.0}, 1.0, first, last - first + 1});
  }
  instance.arrivals = {{1, 1, {0.0, 0.0}}, {2, 1, {0.0, 0.0}}, {1, 2, {0.0, 0.0}}};
  instance.sort_for_replay();
  instance.validate();
  return instance;
}

struct RandomInstanceSpec {
  int periods = 3;
  int max_workers_total = 8;
  int max_tasks = 20;
  double area_side = 10.0;
  double radius_min = 1.5;
  double radius_max = 4.0;
};

// Small random geometric campaign, independent of the production generator.
inline CampaignInstance random_instance(std::uint64_t seed, const RandomInstanceSpec& spec = {}) {
  Rng rng(derive_seed(seed, 0x7465737466697874ULL));
  CampaignInstance instance;
  instance.num_periods = spec.periods;
  instance.area = {0.0, 0.0, spec.area_side, spec.area_side};

  const int workers = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_workers_total)));
  std::int64_t next_worker_id = 1;
  for (int i = 0; i < workers; ++i) {
    WorkerArrival w;
    // A few recurring identities so ledgers have something to count.
    w.worker_id = (rng.uniform01() < 0.3 && next_worker_id > 1)
                      ? 1 + static_cast<WorkerId>(rng.below(static_cast<std::uint64_t>(next_worker_id - 1)))
                      : next_worker_id++;
    w.period = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.periods)));
    w.location = {rng.uniform(0.0, spec.area_side), rng.uniform(0.0, spec.area_side)};
    const bool duplicate = [&] {
      for (const auto& e : instance.arrivals)
        if (e.worker_id == w.worker_id && e.period == w.period) return true;
      return false;
    }();
    if (!duplicate) instance.arrivals.push_back(w);
  }

  const int tasks = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_tasks)));
  for (int i = 0; i < tasks; ++i) {
    TaskSpec t;
    t.id = i + 1;
    t.location = {rng.uniform(0.0, spec.area_side), rng.uniform(0.0, spec.area_side)};
    t.radius = rng.uniform(spec.radius_min, spec.radius_max);
    t.release_period = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.periods)));
    t.duration = static_cast<int>(rng.uniform_int(1, spec.periods));
    instance.tasks.push_back(t);
  }

  instance.sort_for_replay();
  instance.validate();
  return instance;
}

}  // namespace hypersc::testing
