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

// Clairvoyant baselines over the whole-campaign bipartite coverage graph:
// exhaustive optima for desk-scale instances (replacing an ILP solver) and
// the approximation-guaranteed greedy solvers. Greedy with per-period budgets
// carries a 0.5 guarantee; greedy with one campaign budget carries 1 - 1/e.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "hypersc/bitset.hpp"
#include "hypersc/coverage.hpp"
#include "hypersc/errors.hpp"
#include "hypersc/model.hpp"

namespace hypersc {

// Worker-period nodes on one side, tasks on the other; an edge wherever the
// temporal and spatial constraints both hold, across all periods (deferred
// coverage included). Selection-independent.
struct CampaignBipartiteGraph {
  struct Node {
    WorkerId worker = 0;
    int period = 0;
    DynBitset covers;  // over dense task indices
  };

  int num_periods = 0;
  std::vector<TaskId> task_ids;          // dense -> id
  std::vector<Node> nodes;               // sorted by (period, worker)
  std::vector<std::vector<int>> by_period;  // period (1-based) -> node indices

  static CampaignBipartiteGraph build(const CampaignInstance& instance,
                                      double index_cell_size = 1.0) {
    CampaignBipartiteGraph g;
    g.num_periods = instance.num_periods;
    g.by_period.assign(static_cast<std::size_t>(instance.num_periods) + 1, {});

    if (instance.is_explicit()) {
      for (const auto& c : instance.explicit_coverage)
        for (TaskId t : c.tasks) g.task_ids.push_back(t);
      std::sort(g.task_ids.begin(), g.task_ids.end());
      g.task_ids.erase(std::unique(g.task_ids.begin(), g.task_ids.end()), g.task_ids.end());
      std::unordered_map<TaskId, int> dense;
      for (std::size_t i = 0; i < g.task_ids.size(); ++i)
        dense.emplace(g.task_ids[i], static_cast<int>(i));
      for (const auto& c : instance.explicit_coverage) {
        Node node;
        node.worker = c.worker;
        node.period = c.period;
        node.covers = DynBitset(g.task_ids.size());
        for (TaskId t : c.tasks) node.covers.set(static_cast<std::size_t>(dense.at(t)));
        g.nodes.push_back(std::move(node));
      }
    } else {
      for (const auto& t : instance.tasks) g.task_ids.push_back(t.id);
      std::sort(g.task_ids.begin(), g.task_ids.end());
      std::unordered_map<TaskId, int> dense;
      for (std::size_t i = 0; i < g.task_ids.size(); ++i)
        dense.emplace(g.task_ids[i], static_cast<int>(i));
      const TaskLookup lookup(instance.tasks);
      std::size_t arrival_begin = 0;
      for (int period = 1; period <= instance.num_periods; ++period) {
        std::vector<WorkerArrival> workers;
        while (arrival_begin < instance.arrivals.size() &&
               instance.arrivals[arrival_begin].period == period)
          workers.push_back(instance.arrivals[arrival_begin++]);
        if (workers.empty()) continue;
        Point origin = workers.front().location;
        for (const auto& w : workers) {
          origin.x = std::min(origin.x, w.location.x);
          origin.y = std::min(origin.y, w.location.y);
        }
        GridIndex index(origin, index_cell_size);
        for (std::size_t i = 0; i < workers.size(); ++i)
          index.insert(static_cast<int>(i), workers[i].location);
        std::vector<Node> period_nodes;
        period_nodes.reserve(workers.size());
        for (const auto& w : workers)
          period_nodes.push_back({w.worker_id, period, DynBitset(g.task_ids.size())});
        for (const auto& t : instance.tasks) {
          if (!t.answerable_at(period)) continue;
          const int ti = dense.at(t.id);
          for (int wi : index.query_disk(t.location, t.radius))
            period_nodes[static_cast<std::size_t>(wi)].covers.set(static_cast<std::size_t>(ti));
        }
        for (auto& node : period_nodes) g.nodes.push_back(std::move(node));
      }
    }

    std::sort(g.nodes.begin(), g.nodes.end(), [](const Node& a, const Node& b) {
      if (a.period != b.period) return a.period < b.period;
      return a.worker < b.worker;
    });
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const int p = g.nodes[i].period;
      if (p < 1 || p > g.num_periods) throw InstanceError("bipartite node period out of range");
      g.by_period[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
    }
    return g;
  }
};

struct OfflineResult {
  long long coverage = 0;
  std::vector<std::pair<WorkerId, int>> selected;  // (worker, period), sorted
  std::vector<long long> per_period_selected;      // index 0 unused

  void finalize(int num_periods) {
    std::sort(selected.begin(), selected.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second < b.second;
      return a.first < b.first;
    });
    per_period_selected.assign(static_cast<std::size_t>(num_periods) + 1, 0);
    for (const auto& [worker, period] : selected)
      per_period_selected[static_cast<std::size_t>(period)] += 1;
  }
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000ULL;

namespace detail {

inline double combination_count(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

// Enumerates k-subsets of `pool`, calling visit(subset) for each.
template <typename Visit>
void for_each_subset(const std::vector<int>& pool, std::size_t k, Visit&& visit) {
  std::vector<int> subset(k);
  std::vector<std::size_t> idx(k);
  if (k == 0) {
    visit(std::span<const int>{});
    return;
  }
  if (pool.size() < k) return;
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = pool[idx[i]];
    visit(std::span<const int>(subset));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + pool.size() - k) break;
      if (i == 0) return;
    }
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Exact optimum with one budget per period; enumerates min(K_i, |W_i|)-sized
// per-period subsets (coverage is monotone, so smaller subsets never win).
inline OfflineResult exhaustive_fmtc(const CampaignBipartiteGraph& graph,
                                     std::span<const long long> budgets,
                                     std::uint64_t cap = kDefaultEnumerationCap) {
  if (static_cast<int>(budgets.size()) != graph.num_periods)
    throw ConfigError("exhaustive_fmtc: one budget per period required");
  double combos = 1.0;
  std::vector<std::size_t> pick(static_cast<std::size_t>(graph.num_periods) + 1, 0);
  for (int p = 1; p <= graph.num_periods; ++p) {
    const auto& pool = graph.by_period[static_cast<std::size_t>(p)];
    const long long k = budgets[static_cast<std::size_t>(p - 1)];
    if (k < 0) throw ConfigError("exhaustive_fmtc: negative budget");
    pick[static_cast<std::size_t>(p)] = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(k));
    combos *= detail::combination_count(pool.size(), pick[static_cast<std::size_t>(p)]);
    if (combos > static_cast<double>(cap))
      throw TooLargeError("exhaustive_fmtc: enumeration above cap");
  }

  OfflineResult best;
  best.coverage = -1;
  std::vector<int> chosen;
  DynBitset covered(graph.task_ids.size());
  // Depth-first over periods; covered set rebuilt per leaf from the chosen
  // node list (leaf count is capped, so this stays cheap at desk scale).
  auto recurse = [&](auto&& self, int period) -> void {
    if (period > graph.num_periods) {
      covered.clear();
      for (int node : chosen) covered |= graph.nodes[static_cast<std::size_t>(node)].covers;
      const long long value = static_cast<long long>(covered.count());
      if (value > best.coverage) {
        best.coverage = value;
        best.selected.clear();
        for (int node : chosen)
          best.selected.emplace_back(graph.nodes[static_cast<std::size_t>(node)].worker,
                                     graph.nodes[static_cast<std::size_t>(node)].period);
      }
      return;
    }
    const auto& pool = graph.by_period[static_cast<std::size_t>(period)];
    detail::for_each_subset(pool, pick[static_cast<std::size_t>(period)], [&](std::span<const int> subset) {
      const std::size_t before = chosen.size();
      for (int node : subset) chosen.push_back(node);
      self(self, period + 1);
      chosen.resize(before);
    });
  };
  recurse(recurse, 1);
  if (best.coverage < 0) best.coverage = 0;
  best.finalize(graph.num_periods);
  return best;
}

// Exact optimum with one campaign-wide budget; enumerates min(K, N)-sized
// subsets of all worker-period nodes.
inline OfflineResult exhaustive_dmtc(const CampaignBipartiteGraph& graph, long long total,
                                     std::uint64_t cap = kDefaultEnumerationCap) {
  if (total < 0) throw ConfigError("exhaustive_dmtc: negative budget");
  std::vector<int> pool(graph.nodes.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);
  const std::size_t k = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(total));
  if (detail::combination_count(pool.size(), k) > static_cast<double>(cap))
    throw TooLargeError("exhaustive_dmtc: enumeration above cap");

  OfflineResult best;
  best.coverage = -1;
  DynBitset covered(graph.task_ids.size());
  detail::for_each_subset(pool, k, [&](std::span<const int> subset) {
    covered.clear();
    for (int node : subset) covered |= graph.nodes[static_cast<std::size_t>(node)].covers;
    const long long value = static_cast<long long>(covered.count());
    if (value > best.coverage) {
      best.coverage = value;
      best.selected.clear();
      for (int node : subset)
        best.selected.emplace_back(graph.nodes[static_cast<std::size_t>(node)].worker,
                                   graph.nodes[static_cast<std::size_t>(node)].period);
    }
  });
  if (best.coverage < 0) best.coverage = 0;
  best.finalize(graph.num_periods);
  return best;
}

// Global marginal-gain greedy with per-period budgets: repeatedly take the
// node with the largest marginal coverage among periods that still have
// budget; stops when every remaining gain is zero. Ties to (period, worker).
inline OfflineResult greedy_fmtc(const CampaignBipartiteGraph& graph,
                                 std::span<const long long> budgets) {
  if (static_cast<int>(budgets.size()) != graph.num_periods)
    throw ConfigError("greedy_fmtc: one budget per period required");
  std::vector<long long> remaining(budgets.begin(), budgets.end());
  std::vector<char> taken(graph.nodes.size(), 0);
  DynBitset covered(graph.task_ids.size());
  OfflineResult result;
  while (true) {
    long long best_gain = 0;
    int best_node = -1;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      if (taken[i]) continue;
      if (remaining[static_cast<std::size_t>(graph.nodes[i].period - 1)] <= 0) continue;
      const long long gain = static_cast<long long>(covered.gain_count(graph.nodes[i].covers));
      if (gain > best_gain) {
        best_gain = gain;
        best_node = static_cast<int>(i);
      }
    }
    if (best_node < 0) break;
    taken[static_cast<std::size_t>(best_node)] = 1;
    const auto& node = graph.nodes[static_cast<std::size_t>(best_node)];
    remaining[static_cast<std::size_t>(node.period - 1)] -= 1;
    covered |= node.covers;
    result.selected.emplace_back(node.worker, node.period);
  }
  result.coverage = static_cast<long long>(covered.count());
  result.finalize(graph.num_periods);
  return result;
}

// Period-sequenced variant: processes period groups in the caller-supplied
// order, running the plain greedy within each group.
inline OfflineResult greedy_fmtc_sequenced(const CampaignBipartiteGraph& graph,
                                           std::span<const long long> budgets,
                                           std::span<const int> period_order) {
  if (static_cast<int>(budgets.size()) != graph.num_periods)
    throw ConfigError("greedy_fmtc_sequenced: one budget per period required");
  DynBitset covered(graph.task_ids.size());
  OfflineResult result;
  for (int period : period_order) {
    if (period < 1 || period > graph.num_periods)
      throw ConfigError("greedy_fmtc_sequenced: period out of range");
    const auto& pool = graph.by_period[static_cast<std::size_t>(period)];
    std::vector<char> taken(pool.size(), 0);
    for (long long k = budgets[static_cast<std::size_t>(period - 1)]; k > 0; --k) {
      long long best_gain = 0;
      int best = -1;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (taken[i]) continue;
        const long long gain = static_cast<long long>(
            covered.gain_count(graph.nodes[static_cast<std::size_t>(pool[i])].covers));
        if (gain > best_gain) {
          best_gain = gain;
          best = static_cast<int>(i);
        }
      }
      if (best < 0) break;
      taken[static_cast<std::size_t>(best)] = 1;
      const auto& node = graph.nodes[static_cast<std::size_t>(pool[static_cast<std::size_t>(best)])];
      covered |= node.covers;
      result.selected.emplace_back(node.worker, node.period);
    }
  }
  result.coverage = static_cast<long long>(covered.count());
  result.finalize(graph.num_periods);
  return result;
}

// Classic max-coverage greedy with one campaign budget; also the source of
// the per-period activation profile consumed by the workload baseline.
inline OfflineResult greedy_dmtc(const CampaignBipartiteGraph& graph, long long total) {
  std::vector<char> taken(graph.nodes.size(), 0);
  DynBitset covered(graph.task_ids.size());
  OfflineResult result;
  long long remaining = total;
  while (remaining > 0) {
    long long best_gain = 0;
    int best_node = -1;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      if (taken[i]) continue;
      const long long gain = static_cast<long long>(covered.gain_count(graph.nodes[i].covers));
      if (gain > best_gain) {
        best_gain = gain;
        best_node = static_cast<int>(i);
      }
    }
    if (best_node < 0) break;
    taken[static_cast<std::size_t>(best_node)] = 1;
    const auto& node = graph.nodes[static_cast<std::size_t>(best_node)];
    covered |= node.covers;
    result.selected.emplace_back(node.worker, node.period);
    --remaining;
  }
  result.coverage = static_cast<long long>(covered.count());
  result.finalize(graph.num_periods);
  return result;
}

}  // namespace hypersc
