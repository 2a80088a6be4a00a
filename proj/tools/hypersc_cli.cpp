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

// Command-line front end.
//
//   hypersc generate  workload config -> instance file
//   hypersc run       experiment config -> metrics CSV (+ .hist.csv)
//   hypersc oracle    offline solvers on an instance file
//   hypersc stats     per-config quantile summary of a metrics CSV

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypersc/hypersc.hpp"

namespace {

hypersc::KeyValues load_keys(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
  hypersc::KeyValues kv;
  if (!config_path.empty()) kv = hypersc::parse_config_file(config_path);
  for (const auto& assignment : overrides) hypersc::apply_override(kv, assignment);
  return kv;
}

int cmd_generate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& out_path, std::uint64_t seed, const std::string& checkins,
                 double period_length, const std::string& task_file) {
  hypersc::CampaignInstance instance;
  if (!checkins.empty()) {
    // Check-in ingestion: periods and workers from the CSV, tasks and the
    // campaign frame from a companion instance file.
    if (task_file.empty())
      throw hypersc::ConfigError("--checkins requires --tasks <instance file>");
    const auto frame = hypersc::read_instance_file(task_file);
    auto report = hypersc::ingest_checkins_file(checkins, period_length, frame.area);
    if (report.dropped_out_of_area > 0)
      std::cerr << "warning: dropped " << report.dropped_out_of_area
                << " out-of-area check-ins\n";
    instance = std::move(report.instance);
    instance.tasks = frame.tasks;
    instance.num_periods = std::max(instance.num_periods, frame.num_periods);
    instance.sort_for_replay();
    instance.validate();
  } else {
    auto kv = load_keys(config_path, overrides);
    kv.erase("seeds");
    const auto cfg = hypersc::ExperimentConfig::from_keys(kv);
    hypersc::GeneratorConfig gen = cfg.generator;
    gen.seed = seed;
    instance = hypersc::generate_campaign(gen);
  }
  hypersc::write_instance_file(instance, out_path);
  std::cout << "wrote " << out_path << ": Q=" << instance.num_periods << " tasks="
            << instance.tasks.size() << " arrivals=" << instance.arrivals.size() << "\n";
  return 0;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& out_path, const std::string& seed_list) {
  auto kv = load_keys(config_path, overrides);
  if (!seed_list.empty()) kv["seeds"] = seed_list;
  const auto cfg = hypersc::ExperimentConfig::from_keys(kv);
  const auto rows = hypersc::run_experiment(cfg);
  hypersc::emit_csv(rows, out_path);
  std::cout << "wrote " << out_path << ": " << rows.size() << " rows\n";
  return 0;
}

int cmd_oracle(const std::string& instance_path, const std::string& problem,
               const std::string& solver, long long budget, const std::string& budgets_csv,
               std::uint64_t cap, const std::string& sequence_csv) {
  const auto instance = hypersc::read_instance_file(instance_path);
  const auto graph = hypersc::CampaignBipartiteGraph::build(instance);

  std::vector<long long> budgets;
  if (!budgets_csv.empty()) {
    budgets = hypersc::detail::parse_int_list(budgets_csv, "--budgets");
    if (static_cast<int>(budgets.size()) != instance.num_periods)
      throw hypersc::ConfigError("--budgets needs one entry per period");
  } else {
    budgets = hypersc::allocate_equal(budget, instance.num_periods).per_period;
  }

  hypersc::OfflineResult result;
  if (problem == "fmtc") {
    if (solver == "exhaustive") {
      result = hypersc::exhaustive_fmtc(graph, budgets, cap);
    } else if (!sequence_csv.empty()) {
      std::vector<int> order;
      for (long long p : hypersc::detail::parse_int_list(sequence_csv, "--sequence"))
        order.push_back(static_cast<int>(p));
      result = hypersc::greedy_fmtc_sequenced(graph, budgets, order);
    } else {
      result = hypersc::greedy_fmtc(graph, budgets);
    }
  } else if (problem == "dmtc") {
    result = solver == "exhaustive" ? hypersc::exhaustive_dmtc(graph, budget, cap)
                                    : hypersc::greedy_dmtc(graph, budget);
  } else {
    throw hypersc::ConfigError("--problem must be fmtc or dmtc");
  }

  std::cout << problem << " " << solver << " coverage=" << result.coverage << " selected=";
  for (std::size_t i = 0; i < result.selected.size(); ++i) {
    if (i) std::cout << ',';
    std::cout << "w" << result.selected[i].first << "@" << result.selected[i].second;
  }
  std::cout << "\n";
  return 0;
}

int cmd_stats(const std::string& csv_path, const std::string& column, const std::string& out_path) {
  const auto rows = hypersc::read_csv(csv_path);
  std::map<std::string, std::vector<double>> by_config;
  for (const auto& r : rows) {
    double value = 0.0;
    if (column == "coverage") value = static_cast<double>(r.coverage);
    else if (column == "total_utility") value = r.total_utility;
    else if (column == "runtime_ms") value = r.runtime_ms;
    else if (column == "max_activations") value = static_cast<double>(r.max_activations);
    else if (column == "mean_activations") value = r.mean_activations;
    else throw hypersc::ConfigError("--column must be one of coverage, total_utility, runtime_ms, max_activations, mean_activations");
    by_config[r.config].push_back(value);
  }
  std::ostringstream out;
  out << "config,count,min,q1,median,q3,max\n";
  for (const auto& [config, values] : by_config) {
    const auto s = hypersc::quantiles(values);
    out << config << ',' << s.count << ',' << hypersc::detail::format_double(s.min) << ','
        << hypersc::detail::format_double(s.q1) << ',' << hypersc::detail::format_double(s.median)
        << ',' << hypersc::detail::format_double(s.q3) << ','
        << hypersc::detail::format_double(s.max) << '\n';
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw hypersc::IoError("cannot write '" + out_path + "'");
    f << out.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"budget-constrained task-coverage simulation engine"};
  app.require_subcommand(1);

  std::string config_path, out_path, seed_list;
  std::vector<std::string> overrides;
  std::uint64_t gen_seed = 1;

  std::string checkins, task_file;
  double period_length = 3600.0;
  auto* generate = app.add_subcommand("generate", "generate a synthetic campaign instance file");
  generate->add_option("--config", config_path, "key=value config file");
  generate->add_option("--set", overrides, "config override key=value (repeatable)");
  generate->add_option("--out", out_path, "output instance file")->required();
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--checkins", checkins, "check-in CSV (user_id,timestamp,x_km,y_km)");
  generate->add_option("--period-length", period_length, "check-in bucketing unit (seconds)");
  generate->add_option("--tasks", task_file, "companion instance file supplying tasks/area");

  auto* run = app.add_subcommand("run", "run an experiment and emit a metrics CSV");
  run->add_option("--config", config_path, "key=value config file");
  run->add_option("--set", overrides, "config override key=value (repeatable)");
  run->add_option("--out", out_path, "output CSV path")->required();
  run->add_option("--seed", seed_list, "comma-separated seed list override");

  std::string instance_path, problem = "dmtc", solver = "greedy", budgets_csv, sequence_csv;
  long long budget = 0;
  std::uint64_t cap = hypersc::kDefaultEnumerationCap;
  auto* oracle = app.add_subcommand("oracle", "run offline solvers on an instance file");
  oracle->add_option("--instance", instance_path, "instance file")->required();
  oracle->add_option("--problem", problem, "fmtc or dmtc");
  oracle->add_option("--solver", solver, "exhaustive or greedy");
  oracle->add_option("--budget", budget, "total budget K");
  oracle->add_option("--budgets", budgets_csv, "per-period budgets (fmtc)");
  oracle->add_option("--cap", cap, "enumeration cap");
  oracle->add_option("--sequence", sequence_csv, "period order for the sequenced fmtc greedy");

  std::string csv_path, column = "coverage";
  auto* stats = app.add_subcommand("stats", "per-config quantile summary of a metrics CSV");
  stats->add_option("--csv", csv_path, "metrics CSV from `run`")->required();
  stats->add_option("--column", column, "metric column");
  stats->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed())
      return cmd_generate(config_path, overrides, out_path, gen_seed, checkins, period_length,
                          task_file);
    if (run->parsed()) return cmd_run(config_path, overrides, out_path, seed_list);
    if (oracle->parsed())
      return cmd_oracle(instance_path, problem, solver, budget, budgets_csv, cap, sequence_csv);
    if (stats->parsed()) return cmd_stats(csv_path, column, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
