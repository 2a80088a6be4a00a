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

// Campaign budget plans and allocation strategies. A fixed plan pins the
// number of worker activations per period; a dynamic plan carries one total
// for the whole campaign plus a per-period baseline the adaptive allocator
// measures its spending against.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "hypersc/errors.hpp"
#include "hypersc/rng.hpp"

namespace hypersc {

enum class BudgetMode { kFixed, kDynamic };

struct BudgetPlan {
  BudgetMode mode = BudgetMode::kFixed;
  std::vector<long long> per_period;  // K_i (fixed) or baseline K^base (dynamic)
  long long total = 0;

  static BudgetPlan fixed(std::vector<long long> per_period) {
    BudgetPlan p;
    p.mode = BudgetMode::kFixed;
    p.total = std::accumulate(per_period.begin(), per_period.end(), 0LL);
    p.per_period = std::move(per_period);
    return p;
  }

  void validate() const {
    for (long long k : per_period)
      if (k < 0) throw ConfigError("budget plan has a negative period entry");
    if (std::accumulate(per_period.begin(), per_period.end(), 0LL) != total)
      throw ConfigError("budget plan entries do not sum to the total");
  }
};

// Largest-remainder apportionment of `total` units proportional to `weights`;
// conserves the total exactly. Remainder ties go to the lowest index. All
// weights zero (or empty) falls back to an equal split.
inline std::vector<long long> apportion_largest_remainder(std::span<const double> weights,
                                                          long long total) {
  const std::size_t n = weights.size();
  std::vector<long long> out(n, 0);
  if (n == 0 || total <= 0) return out;
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ConfigError("apportionment weights must be non-negative");
    sum += w;
  }
  if (sum <= 0.0) {
    const long long base = total / static_cast<long long>(n);
    for (auto& v : out) v = base;
    out.back() += total - base * static_cast<long long>(n);
    return out;
  }
  std::vector<double> remainder(n, 0.0);
  long long assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double quota = static_cast<double>(total) * (weights[i] / sum);
    out[i] = static_cast<long long>(std::floor(quota));
    remainder[i] = quota - static_cast<double>(out[i]);
    assigned += out[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  const long long leftover = total - assigned;
  for (long long j = 0; j < leftover; ++j) out[order[static_cast<std::size_t>(j)]] += 1;
  return out;
}

// Equal split: floor(K/Q) per period, remainder to the last period.
inline BudgetPlan allocate_equal(long long total, int periods) {
  if (periods < 1) throw ConfigError("allocate_equal: need at least one period");
  if (total < 0) throw ConfigError("allocate_equal: negative budget");
  BudgetPlan p;
  p.mode = BudgetMode::kDynamic;
  p.total = total;
  const long long base = total / periods;
  p.per_period.assign(static_cast<std::size_t>(periods), base);
  p.per_period.back() += total - base * periods;
  return p;
}

// Random proportional split: one positive uniform draw per period, then
// largest-remainder apportionment so the total is conserved exactly.
inline BudgetPlan allocate_random(long long total, int periods, std::uint64_t seed) {
  if (periods < 1) throw ConfigError("allocate_random: need at least one period");
  if (total < 0) throw ConfigError("allocate_random: negative budget");
  Rng rng(derive_seed(seed, kStreamBudgetSplit));
  std::vector<double> weights(static_cast<std::size_t>(periods));
  for (auto& w : weights) w = rng.uniform01_open_low();
  BudgetPlan p;
  p.mode = BudgetMode::kDynamic;
  p.total = total;
  p.per_period = apportion_largest_remainder(weights, total);
  return p;
}

// Baseline learned from a historical run: per-period activation counts of the
// offline dynamic-budget greedy, rescaled to sum to the new total.
inline BudgetPlan derive_workload_baseline(std::span<const long long> history_counts,
                                           long long new_total) {
  if (history_counts.empty()) throw ConfigError("workload baseline: empty history");
  std::vector<double> weights(history_counts.size());
  for (std::size_t i = 0; i < history_counts.size(); ++i) {
    if (history_counts[i] < 0) throw ConfigError("workload baseline: negative activation count");
    weights[i] = static_cast<double>(history_counts[i]);
  }
  BudgetPlan p;
  p.mode = BudgetMode::kDynamic;
  p.total = new_total;
  p.per_period = apportion_largest_remainder(weights, new_total);
  return p;
}

// Stop probabilities of the adaptive allocator's contextual epsilon-greedy
// rule, indexed by the sign quadrant (delta_gain > 0, delta_budget > 0).
// Defaults: never stop when the candidate beats the running average AND
// budget is under-utilized; always stop when both are unfavorable; a fair
// coin for the mixed quadrants.
struct EpsilonTable {
  // stop[dl][dk], dl = delta_gain > 0, dk = delta_budget > 0
  double stop[2][2] = {{1.0, 0.5}, {0.5, 0.0}};

  static EpsilonTable defaults() { return {}; }

  static EpsilonTable uniform(double e) {
    EpsilonTable t;
    t.stop[0][0] = t.stop[0][1] = t.stop[1][0] = t.stop[1][1] = e;
    return t;
  }

  // Order: (gain<=0,budget<=0), (gain<=0,budget>0), (gain>0,budget<=0),
  // (gain>0,budget>0) -- the harness's budget.eps key uses this order.
  static EpsilonTable from_values(double nn, double np, double pn, double pp) {
    EpsilonTable t;
    t.stop[0][0] = nn;
    t.stop[0][1] = np;
    t.stop[1][0] = pn;
    t.stop[1][1] = pp;
    return t;
  }

  double at(bool gain_positive, bool budget_positive) const {
    return stop[gain_positive ? 1 : 0][budget_positive ? 1 : 0];
  }

  void validate() const {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (stop[a][b] < 0.0 || stop[a][b] > 1.0)
          throw ConfigError("epsilon table entries must lie in [0,1]");
  }
};

// Which running average the adaptive allocator maintains:
//   kPeriodDecay   once per period, mean' = (mean*(Q-1) + last_gain)/Q
//   kAcceptedMean  after every acceptance, plain mean of accepted gains
enum class GainAveraging { kPeriodDecay, kAcceptedMean };

}  // namespace hypersc
