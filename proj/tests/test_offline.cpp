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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "hypersc/offline.hpp"
#include "support/fixtures.hpp"

using namespace hypersc;
using namespace hypersc::testing;

namespace {

// Independent enumeration for the cross-check: iterates periods in reverse
// and collects the optimum by plain set arithmetic.
long long reverse_enumeration_fmtc(const CampaignBipartiteGraph& graph,
                                   const std::vector<long long>& budgets) {
  long long best = 0;
  std::vector<int> chosen;
  auto recurse = [&](auto&& self, int period) -> void {
    if (period == 0) {
      std::set<int> covered;
      for (int node : chosen)
        for (std::size_t t = 0; t < graph.task_ids.size(); ++t)
          if (graph.nodes[static_cast<std::size_t>(node)].covers.test(t))
            covered.insert(static_cast<int>(t));
      best = std::max(best, static_cast<long long>(covered.size()));
      return;
    }
    const auto& pool = graph.by_period[static_cast<std::size_t>(period)];
    const std::size_t k =
        std::min<std::size_t>(pool.size(), static_cast<std::size_t>(budgets[static_cast<std::size_t>(period - 1)]));
    std::vector<int> subset;
    auto pick = [&](auto&& pick_self, std::size_t start, std::size_t need) -> void {
      if (need == 0) {
        const std::size_t before = chosen.size();
        for (int node : subset) chosen.push_back(node);
        self(self, period - 1);
        chosen.resize(before);
        return;
      }
      for (std::size_t i = start; i + need <= pool.size() + 1 && i < pool.size(); ++i) {
        subset.push_back(pool[i]);
        pick_self(pick_self, i + 1, need - 1);
        subset.pop_back();
      }
    };
    pick(pick, 0, k);
  };
  recurse(recurse, graph.num_periods);
  return best;
}

}  // namespace

TEST_CASE("micro-campaign offline optima") {
  const auto instance = toy_geometric();
  const auto graph = CampaignBipartiteGraph::build(instance);
  const std::vector<long long> unit_budgets{1, 1};

  SECTION("per-period optimum is five tasks") {
    const auto result = exhaustive_fmtc(graph, unit_budgets);
    CHECK(result.coverage == 5);
  }

  SECTION("campaign optimum is six tasks via both period-1 workers") {
    const auto result = exhaustive_dmtc(graph, 2);
    CHECK(result.coverage == 6);
    CHECK(result.selected ==
          std::vector<std::pair<WorkerId, int>>{{1, 1}, {2, 1}});
  }

  SECTION("campaign greedy reaches the optimum here") {
    const auto result = greedy_dmtc(graph, 2);
    CHECK(result.coverage == 6);
    CHECK(result.selected ==
          std::vector<std::pair<WorkerId, int>>{{1, 1}, {2, 1}});
  }

  SECTION("global-gain per-period greedy covers four") {
    const auto result = greedy_fmtc(graph, unit_budgets);
    CHECK(result.coverage == 4);
    REQUIRE(result.selected.size() == 1);
    CHECK(result.selected.front() == std::pair<WorkerId, int>{2, 1});
    CHECK(result.coverage >= 0.5 * 5);
  }

  SECTION("period-sequenced greedy in order 2,1 reproduces the alternative trace") {
    const std::vector<int> order{2, 1};
    const auto result = greedy_fmtc_sequenced(graph, unit_budgets, order);
    CHECK(result.coverage == 5);
    CHECK(result.selected ==
          std::vector<std::pair<WorkerId, int>>{{1, 1}, {1, 2}});
  }
}

TEST_CASE("explicit-coverage fixture gives the same optima as the geometric one") {
  const auto graph = CampaignBipartiteGraph::build(toy_explicit());
  const std::vector<long long> unit{1, 1};
  CHECK(exhaustive_fmtc(graph, unit).coverage == 5);
  CHECK(exhaustive_dmtc(graph, 2).coverage == 6);
  CHECK(greedy_dmtc(graph, 2).coverage == 6);
  CHECK(greedy_fmtc(graph, unit).coverage == 4);
}

TEST_CASE("greedy is optimal on disjoint coverage sets") {
  // Three workers with pairwise-disjoint task clusters: marginal gains never
  // interact, so the greedy pick order cannot lose anything.
  CampaignInstance instance;
  instance.num_periods = 2;
  instance.area = {0.0, 0.0, 30.0, 10.0};
  TaskId next = 1;
  const double centers[] = {3.0, 13.0, 23.0};
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < 2 + c; ++t)
      instance.tasks.push_back({next++, {centers[c] + 0.2 * t, 5.0}, 1.5, 1, 2});
  instance.arrivals = {{1, 1, {3.0, 5.0}}, {2, 1, {13.0, 5.0}}, {3, 2, {23.0, 5.0}}};
  instance.sort_for_replay();
  instance.validate();
  const auto graph = CampaignBipartiteGraph::build(instance);
  const std::vector<long long> budgets{2, 1};
  CHECK(greedy_fmtc(graph, budgets).coverage == exhaustive_fmtc(graph, budgets).coverage);
  CHECK(greedy_dmtc(graph, 3).coverage == exhaustive_dmtc(graph, 3).coverage);
}

TEST_CASE("degenerate budgets") {
  const auto graph = CampaignBipartiteGraph::build(toy_geometric());
  CHECK(exhaustive_fmtc(graph, std::vector<long long>{0, 0}).coverage == 0);
  CHECK(exhaustive_dmtc(graph, 0).coverage == 0);
  CHECK(greedy_dmtc(graph, 1).coverage == 4);  // single best worker
  // Budget beyond the node count reaches the union of all coverage sets.
  CHECK(exhaustive_dmtc(graph, 100).coverage == 6);
  CHECK(greedy_dmtc(graph, 100).coverage == 6);
}

TEST_CASE("enumeration caps trip the too-large error") {
  const auto instance = random_instance(3, {.periods = 2, .max_workers_total = 8, .max_tasks = 10});
  const auto graph = CampaignBipartiteGraph::build(instance);
  if (graph.nodes.size() >= 4) {
    CHECK_THROWS_AS(exhaustive_dmtc(graph, graph.nodes.size() / 2, 1), TooLargeError);
  }
}

TEST_CASE("exhaustive optima agree with an independent reverse enumeration") {
  for (std::uint64_t seed = 500; seed < 540; ++seed) {
    RandomInstanceSpec spec;
    spec.periods = 3;
    spec.max_workers_total = 7;
    spec.max_tasks = 12;
    const auto instance = random_instance(seed, spec);
    const auto graph = CampaignBipartiteGraph::build(instance);
    std::vector<long long> budgets;
    for (int p = 0; p < spec.periods; ++p) budgets.push_back(1 + static_cast<long long>((seed + p) % 2));
    CHECK(exhaustive_fmtc(graph, budgets).coverage == reverse_enumeration_fmtc(graph, budgets));
  }
}

TEST_CASE("dynamic budgets dominate fixed ones and greedy bounds hold") {
  const double inv_e_bound = 1.0 - 1.0 / std::exp(1.0);
  for (std::uint64_t seed = 600; seed < 660; ++seed) {
    RandomInstanceSpec spec;
    spec.periods = 3;
    spec.max_workers_total = 8;
    spec.max_tasks = 16;
    const auto instance = random_instance(seed, spec);
    const auto graph = CampaignBipartiteGraph::build(instance);
    std::vector<long long> budgets;
    long long total = 0;
    for (int p = 0; p < spec.periods; ++p) {
      budgets.push_back(1 + static_cast<long long>((seed + p) % 2));
      total += budgets.back();
    }
    const auto fixed_opt = exhaustive_fmtc(graph, budgets);
    const auto dynamic_opt = exhaustive_dmtc(graph, total);
    CHECK(dynamic_opt.coverage >= fixed_opt.coverage);

    const auto fixed_greedy = greedy_fmtc(graph, budgets);
    const auto dynamic_greedy = greedy_dmtc(graph, total);
    CHECK(static_cast<double>(fixed_greedy.coverage) >= 0.5 * static_cast<double>(fixed_opt.coverage));
    CHECK(static_cast<double>(dynamic_greedy.coverage) >=
          inv_e_bound * static_cast<double>(dynamic_opt.coverage) - 1e-9);

    // Feasibility of the greedy selections.
    for (int p = 1; p <= spec.periods; ++p)
      CHECK(fixed_greedy.per_period_selected[static_cast<std::size_t>(p)] <=
            budgets[static_cast<std::size_t>(p - 1)]);
    CHECK(static_cast<long long>(dynamic_greedy.selected.size()) <= total);
  }
}

TEST_CASE("optima grow with budget and radius") {
  for (std::uint64_t seed = 700; seed < 715; ++seed) {
    RandomInstanceSpec spec;
    spec.periods = 2;
    spec.max_workers_total = 6;
    spec.max_tasks = 12;
    auto instance = random_instance(seed, spec);
    const auto graph = CampaignBipartiteGraph::build(instance);
    long long prev = -1;
    for (long long k = 0; k <= 4; ++k) {
      const auto r = exhaustive_dmtc(graph, k);
      CHECK(r.coverage >= prev);
      prev = r.coverage;
    }
    // Expand every task radius: coverage sets only grow.
    auto grown = instance;
    for (auto& t : grown.tasks) t.radius *= 1.5;
    const auto grown_graph = CampaignBipartiteGraph::build(grown);
    CHECK(exhaustive_dmtc(grown_graph, 3).coverage >= exhaustive_dmtc(graph, 3).coverage);
    std::vector<long long> unit(static_cast<std::size_t>(spec.periods), 1);
    CHECK(exhaustive_fmtc(grown_graph, unit).coverage >= exhaustive_fmtc(graph, unit).coverage);
  }
}

TEST_CASE("campaign greedy marginal gains are non-increasing") {
  for (std::uint64_t seed = 800; seed < 815; ++seed) {
    const auto instance = random_instance(seed, {.periods = 3, .max_workers_total = 9, .max_tasks = 18});
    const auto graph = CampaignBipartiteGraph::build(instance);
    const auto result = greedy_dmtc(graph, 6);
    // Recompute the gain sequence by replaying the selection.
    DynBitset covered(graph.task_ids.size());
    long long prev_gain = std::numeric_limits<long long>::max();
    for (const auto& [worker, period] : [&] {
           // greedy_dmtc sorts its output; replay needs pick order, so redo
           // the greedy loop directly on coverage counts.
           std::vector<std::pair<WorkerId, int>> order;
           DynBitset cov(graph.task_ids.size());
           std::vector<char> taken(graph.nodes.size(), 0);
           for (long long k = 0; k < 6; ++k) {
             long long best_gain = 0;
             int best = -1;
             for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
               if (taken[i]) continue;
               const long long gain = static_cast<long long>(cov.gain_count(graph.nodes[i].covers));
               if (gain > best_gain) {
                 best_gain = gain;
                 best = static_cast<int>(i);
               }
             }
             if (best < 0) break;
             taken[static_cast<std::size_t>(best)] = 1;
             cov |= graph.nodes[static_cast<std::size_t>(best)].covers;
             order.emplace_back(graph.nodes[static_cast<std::size_t>(best)].worker,
                                graph.nodes[static_cast<std::size_t>(best)].period);
           }
           return order;
         }()) {
      long long gain = 0;
      for (const auto& node : graph.nodes) {
        if (node.worker == worker && node.period == period) {
          gain = static_cast<long long>(covered.gain_count(node.covers));
          covered |= node.covers;
          break;
        }
      }
      CHECK(gain <= prev_gain);
      prev_gain = gain;
    }
    (void)result;
  }
}
