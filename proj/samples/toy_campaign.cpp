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

// Two-period micro campaign: six tasks, two workers in period 1, one
// returning worker in period 2. Shows the coverage sets, the online greedy
// under one activation per period, and the offline optima.

#include <iostream>

#include "hypersc/hypersc.hpp"

int main() {
  using namespace hypersc;

  CampaignInstance instance;
  instance.num_periods = 2;
  instance.area = {-3.0, -3.0, 10.0, 3.0};
  instance.tasks = {
      {1, {2.0, 0.0}, 2.5, 1, 2},   // reachable from both period-1 workers
      {2, {0.0, 1.0}, 1.5, 1, 2},
      {3, {-1.0, 0.0}, 1.2, 1, 2},
      {4, {4.0, 1.0}, 1.4, 1, 2},
      {5, {6.0, 0.0}, 2.5, 1, 2},   // deferred to period 2 if unassigned
      {6, {6.5, 0.0}, 3.0, 1, 2},
  };
  instance.arrivals = {
      {1, 1, {0.0, 0.0}},
      {2, 1, {4.0, 0.0}},
      {1, 2, {8.0, 0.0}},  // worker 1 comes back elsewhere
  };
  instance.sort_for_replay();
  instance.validate();

  const TaskLookup lookup(instance.tasks);
  const auto snapshot = advance_period({}, {1, 2, 3, 4, 5, 6}, 1,
                                       {instance.arrivals[0], instance.arrivals[1]}, lookup);
  const auto coverage = compute_coverage(snapshot, lookup);
  for (const auto& [worker, tasks] : coverage.coverage) {
    std::cout << "period 1, worker " << worker << " covers:";
    for (const auto& ct : tasks) std::cout << " t" << ct.task;
    std::cout << "\n";
  }

  const auto online = run_fixed_plan(instance, BudgetPlan::fixed({1, 1}));
  std::cout << "online greedy, budget 1+1: coverage " << online.total_coverage << "\n";

  const auto graph = CampaignBipartiteGraph::build(instance);
  const long long budgets[] = {1, 1};
  std::cout << "offline per-period optimum:  " << exhaustive_fmtc(graph, budgets).coverage << "\n";
  std::cout << "offline campaign optimum:    " << exhaustive_dmtc(graph, 2).coverage << "\n";
  std::cout << "offline campaign greedy:     " << greedy_dmtc(graph, 2).coverage << "\n";
  return 0;
}
