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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypersc/experiment.hpp"
#include "hypersc/metrics.hpp"
#include "support/fixtures.hpp"

using namespace hypersc;
using namespace hypersc::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempPath {
  std::string path;
  explicit TempPath(const std::string& name)
      : path(std::string("hypersc_test_") + name) {}
  ~TempPath() {
    std::remove(path.c_str());
    std::remove((path + ".hist.csv").c_str());
  }
};

}  // namespace

TEST_CASE("overlap ratio") {
  const auto instance = toy_geometric();
  const auto a = run_fixed_plan(instance, BudgetPlan::fixed({1, 1}));
  const auto b = run_fixed_plan(instance, BudgetPlan::fixed({1, 1}));
  CHECK(overlap_ratio(a, b) == 1.0);

  const auto everything = run_fixed_plan(instance, BudgetPlan::fixed({2, 1}));
  // a selects worker 2 only; everything selects workers 1,2 at period 1.
  CHECK(overlap_ratio(a, everything) == Catch::Approx(0.5));

  const auto none = run_fixed_plan(instance, BudgetPlan::fixed({0, 0}));
  CHECK(overlap_ratio(none, none) == 1.0);
  CHECK(overlap_ratio(a, none) == 0.0);

  const auto other = run_fixed_plan(toy_explicit(), BudgetPlan::fixed({1, 1}));
  CHECK_THROWS_AS(overlap_ratio(a, other), ConfigError);
}

TEST_CASE("overlap ratio on hand-built selections") {
  // a = {(w1,1),(w2,1)}, b = {(w2,1),(w3,2)} -> intersection 1, union 3.
  CampaignResult a, b;
  a.instance_digest = b.instance_digest = 42;
  a.num_periods = b.num_periods = 2;
  PeriodStats pa1{.period = 1, .selected = {1, 2}};
  PeriodStats pb1{.period = 1, .selected = {2}};
  PeriodStats pb2{.period = 2, .selected = {3}};
  a.periods = {pa1};
  b.periods = {pb1, pb2};
  CHECK(overlap_ratio(a, b) == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("csv write/read round-trips field for field") {
  MetricsRow row;
  row.config = "cos20-q28-t200-r5-basic-adapt-binary-K140";
  row.seed = 7;
  row.budget_total = 140;
  row.periods = 28;
  row.radius = "5";
  row.heuristic = "basic";
  row.budget_strategy = "adapt";
  row.utility = "binary";
  row.alpha = 0.1;
  row.coverage = 1234;
  row.total_utility = 1100.25;
  row.max_activations = 9;
  row.mean_activations = 2.3333333333333335;
  row.runtime_ms = 17.25;
  row.activation_hist = {{1, 30}, {2, 10}, {9, 1}};

  TempPath tmp("roundtrip.csv");
  emit_csv(std::vector<MetricsRow>{row}, tmp.path);
  const auto rows = read_csv(tmp.path);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].config == row.config);
  CHECK(rows[0].seed == row.seed);
  CHECK(rows[0].budget_total == row.budget_total);
  CHECK(rows[0].periods == row.periods);
  CHECK(rows[0].radius == row.radius);
  CHECK(rows[0].heuristic == row.heuristic);
  CHECK(rows[0].budget_strategy == row.budget_strategy);
  CHECK(rows[0].utility == row.utility);
  CHECK(rows[0].alpha == row.alpha);
  CHECK(rows[0].coverage == row.coverage);
  CHECK(rows[0].total_utility == row.total_utility);
  CHECK(rows[0].max_activations == row.max_activations);
  CHECK(rows[0].mean_activations == row.mean_activations);
  CHECK(rows[0].runtime_ms == row.runtime_ms);

  const auto hist = slurp(tmp.path + ".hist.csv");
  CHECK(hist == "config,seed,activations,worker_count\n" +
                    std::string("cos20-q28-t200-r5-basic-adapt-binary-K140,7,1,30\n") +
                    "cos20-q28-t200-r5-basic-adapt-binary-K140,7,2,10\n" +
                    "cos20-q28-t200-r5-basic-adapt-binary-K140,7,9,1\n");
}

TEST_CASE("empty row sets produce header-only files") {
  TempPath tmp("empty.csv");
  emit_csv(std::vector<MetricsRow>{}, tmp.path);
  CHECK(slurp(tmp.path) == std::string(kCsvHeader) + "\n");
  CHECK(slurp(tmp.path + ".hist.csv") == "config,seed,activations,worker_count\n");
  CHECK(read_csv(tmp.path).empty());
}

TEST_CASE("quantile summary") {
  const auto s = quantiles({4.0, 1.0, 3.0, 2.0, 5.0});
  CHECK(s.count == 5);
  CHECK(s.min == 1.0);
  CHECK(s.q1 == 2.0);
  CHECK(s.median == 3.0);
  CHECK(s.q3 == 4.0);
  CHECK(s.max == 5.0);
  CHECK(quantiles({}).count == 0);
  CHECK(quantiles({7.0}).median == 7.0);
}

namespace {

KeyValues smoke_keys() {
  KeyValues kv;
  kv["gen.arrival"] = "cosine";
  kv["gen.mu"] = "6";
  kv["gen.amplitude"] = "0.5";
  kv["gen.periods"] = "4";
  kv["gen.tasks_per_period"] = "15";
  kv["gen.radius"] = "3";
  kv["gen.area"] = "0,0,10,10";
  kv["budget.mode"] = "dynamic";
  kv["budget.strategy"] = "adapt";
  kv["budget.k"] = "8";
  kv["seeds"] = "1,2";
  return kv;
}

}  // namespace

TEST_CASE("experiments are deterministic byte for byte") {
  const auto cfg = ExperimentConfig::from_keys(smoke_keys());
  const auto rows1 = run_experiment(cfg);
  const auto rows2 = run_experiment(cfg);
  TempPath t1("det1.csv"), t2("det2.csv");
  emit_csv(rows1, t1.path);
  emit_csv(rows2, t2.path);
  CHECK(slurp(t1.path) == slurp(t2.path));
  CHECK(slurp(t1.path + ".hist.csv") == slurp(t2.path + ".hist.csv"));
}

TEST_CASE("opting into timing fills the runtime column") {
  auto kv = smoke_keys();
  kv["timing"] = "on";
  kv["seeds"] = "1";
  const auto rows = run_experiment(ExperimentConfig::from_keys(kv));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].runtime_ms > 0.0);
}

TEST_CASE("the worker-pool width does not change the rows") {
  auto kv = smoke_keys();
  kv["seeds"] = "1,2,3,4";
  kv["jobs"] = "1";
  const auto serial = run_experiment(ExperimentConfig::from_keys(kv));
  kv["jobs"] = "4";
  const auto parallel = run_experiment(ExperimentConfig::from_keys(kv));
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].config == parallel[i].config);
    CHECK(serial[i].seed == parallel[i].seed);
    CHECK(serial[i].coverage == parallel[i].coverage);
    CHECK(serial[i].total_utility == parallel[i].total_utility);
  }
}

TEST_CASE("zero seeds produce an empty but valid run") {
  auto kv = smoke_keys();
  kv["seeds"] = "";
  const auto cfg = ExperimentConfig::from_keys(kv);
  CHECK(cfg.seeds.empty());
  const auto rows = run_experiment(cfg);
  CHECK(rows.empty());
  TempPath tmp("zeroseeds.csv");
  emit_csv(rows, tmp.path);
  CHECK(slurp(tmp.path) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("offline coverage sweeps are monotone in the budget") {
  auto kv = smoke_keys();
  kv["gen.mu"] = "3";
  kv["gen.tasks_per_period"] = "10";
  kv["gen.periods"] = "2";
  kv["budget.strategy"] = "equal";
  kv["offline.run"] = "exhaustive";
  kv["seeds"] = "3";
  kv["sweep.k"] = "1,2,4";
  const auto cfg = ExperimentConfig::from_keys(kv);
  const auto rows = run_experiment(cfg);
  std::map<std::string, std::map<long long, long long>> coverage_by_kind;
  for (const auto& r : rows) coverage_by_kind[r.budget_strategy][r.budget_total] = r.coverage;
  for (const auto& kind : {"dynoff-exact", "fixedoff-exact", "equal"}) {
    const auto& series = coverage_by_kind[kind];
    REQUIRE(series.size() == 3);
    long long prev = -1;
    for (const auto& [k, cov] : series) {
      if (kind != std::string("equal")) CHECK(cov >= prev);
      prev = cov;
    }
  }
  // Dynamic offline dominates fixed offline at equal budget.
  for (const auto& [k, cov] : coverage_by_kind["dynoff-exact"])
    CHECK(cov >= coverage_by_kind["fixedoff-exact"][k]);
}

TEST_CASE("runs on the explicit fixture match the frozen coverage") {
  TempPath instance_file("toy.txt");
  write_instance_file(toy_explicit(), instance_file.path);
  KeyValues kv;
  kv["instance.file"] = instance_file.path;
  kv["budget.mode"] = "fixed";
  kv["budget.per_period"] = "1,1";
  kv["budget.k"] = "2";
  kv["offline.run"] = "exhaustive";
  kv["seeds"] = "1";
  const auto rows = run_experiment(ExperimentConfig::from_keys(kv));
  REQUIRE(rows.size() == 3);
  std::map<std::string, long long> coverage;
  for (const auto& r : rows) coverage[r.budget_strategy] = r.coverage;
  CHECK(coverage["fixed"] == 4);           // online basic, one activation per period
  CHECK(coverage["fixedoff-exact"] == 5);  // clairvoyant per-period optimum
  CHECK(coverage["dynoff-exact"] == 6);    // clairvoyant campaign optimum
}

TEST_CASE("the genetic selector path runs through the harness") {
  auto kv = smoke_keys();
  kv["budget.mode"] = "fixed";
  kv["budget.k"] = "8";
  kv["moo.enabled"] = "1";
  kv["moo.alpha"] = "0.5";
  kv["moo.population"] = "16";
  kv["moo.generations"] = "15";
  kv["seeds"] = "1";
  kv.erase("budget.strategy");
  const auto rows = run_experiment(ExperimentConfig::from_keys(kv));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].heuristic == "nsga");
  CHECK(rows[0].budget_strategy == "fixed");
  CHECK(rows[0].alpha == 0.5);
  CHECK(rows[0].coverage > 0);

  // Alpha sweeps only make sense with the overload objective enabled.
  auto bad = smoke_keys();
  bad["sweep.alpha"] = "0.9,0.1";
  CHECK_THROWS_AS(ExperimentConfig::from_keys(bad), ConfigError);

  // The documented alias for choosing the offline solver.
  auto alias = smoke_keys();
  alias["offline.solver"] = "greedy";
  CHECK(ExperimentConfig::from_keys(alias).offline == OfflineRun::kGreedy);
}

TEST_CASE("the learned-workload baseline path runs end to end") {
  auto kv = smoke_keys();
  kv["budget.baseline"] = "workload";
  kv["heuristic"] = "temporal";
  kv["seeds"] = "1,2";
  const auto rows = run_experiment(ExperimentConfig::from_keys(kv));
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.budget_strategy == "adaptw");
    CHECK(r.coverage > 0);
  }
}

TEST_CASE("job failures carry the sweep context") {
  auto kv = smoke_keys();
  kv["budget.strategy"] = "equal";
  kv["offline.run"] = "exhaustive";
  kv["offline.cap"] = "1";  // guaranteed too small
  kv["seeds"] = "1";
  const auto cfg = ExperimentConfig::from_keys(kv);
  try {
    run_experiment(cfg);
    FAIL("expected Error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("seed=1") != std::string::npos);
    CHECK(what.find("K=8") != std::string::npos);
  }
}
