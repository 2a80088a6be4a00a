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

// Compares the budget strategies on one oscillating synthetic workload.

#include <iostream>

#include "hypersc/hypersc.hpp"

int main() {
  using namespace hypersc;

  GeneratorConfig gen;
  gen.seed = 7;
  gen.periods = 28;
  gen.worker_arrival = CosineArrival{20.0, 0.8, 7.0};
  gen.tasks_per_period = 200;
  gen.radius_choices = {5.0};
  gen.area = {0.0, 0.0, 16.0, 16.0};
  const auto instance = generate_campaign(gen);

  const long long budget = 140;
  const auto equal = run_fixed_plan(instance, allocate_equal(budget, gen.periods));
  const auto naive = run_naive(instance, budget);
  const auto adapt = run_adapt(instance, budget, EpsilonTable::defaults(),
                               allocate_equal(budget, gen.periods), gen.seed);

  std::cout << "tasks: " << instance.tasks.size() << ", budget: " << budget << "\n";
  std::cout << "naive coverage: " << naive.total_coverage << " (spent "
            << naive.total_selected() << ")\n";
  std::cout << "equal coverage: " << equal.total_coverage << " (spent "
            << equal.total_selected() << ")\n";
  std::cout << "adapt coverage: " << adapt.total_coverage << " (spent "
            << adapt.total_selected() << ")\n";
  return 0;
}
