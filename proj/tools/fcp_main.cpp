// Copyright 2026 The FCP Authors
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


#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "fcp/config.hpp"
#include "fcp/errors.hpp"
#include "fcp/harness.hpp"
#include "fcp/serialization.hpp"

namespace
{

enum class Level { kError, kInfo, kDebug };

Level log_level()
{
  const char * env = std::getenv("FCP_LOG_LEVEL");
  const std::string v = env ? env : "info";
  if (v == "error") {
    return Level::kError;
  }
  if (v == "debug") {
    return Level::kDebug;
  }
  return Level::kInfo;
}

void log(Level level, const std::string & msg)
{
  static const Level threshold = log_level();
  if (level <= threshold) {
    static const char * names[] = {"error", "info", "debug"};
    std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << '\n';
  }
}

void write_file(const std::filesystem::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw fcp::PlanningError(fcp::ErrorCode::kConfig, "cannot write " + path.string());
  }
  out << text;
  log(Level::kDebug, "wrote " + path.string());
}

fcp::PlannerKind planner_kind(const std::string & name)
{
  if (name == "fcp") {
    return fcp::PlannerKind::kFcp;
  }
  if (name == "astar") {
    return fcp::PlannerKind::kAStar;
  }
  throw fcp::PlanningError(fcp::ErrorCode::kConfig, "planner must be fcp or astar");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Frenet corridor planner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int trials = 50;
  int runs = 1000;
  bool single_thread = false;
  std::string planner_name = "fcp";
  std::vector<std::string> sets;

  auto common = [&](CLI::App * cmd) {
    cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--set", sets, "Override key=value (repeatable)");
  };
  auto * plan = app.add_subcommand("plan", "Run one planning cycle");
  common(plan);
  auto * episode = app.add_subcommand("episode", "Simulate a closed-loop episode");
  common(episode);
  episode->add_option("--planner", planner_name, "fcp or astar");
  auto * mc = app.add_subcommand("montecarlo", "Randomized episodes");
  common(mc);
  mc->add_option("--trials", trials, "Trial count")->check(CLI::PositiveNumber);
  mc->add_option("--planner", planner_name, "fcp or astar");
  mc->add_flag("--single-thread", single_thread, "Run trials sequentially");
  auto * bench = app.add_subcommand("bench", "Runtime profile over randomized solves");
  common(bench);
  bench->add_option("--runs", runs, "Solve count")->check(CLI::PositiveNumber);
  bench->add_flag("--single-thread", single_thread, "Accepted for symmetry; solves always run on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto & s : sets) {
      overrides.push_back(fcp::split_override(s));
    }
    const auto scenario = fcp::load_scenario(scenario_path);
    const auto config = fcp::make_config(scenario, overrides);
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    log(Level::kInfo, "scenario " + scenario.name + ", seed " + std::to_string(seed));

    if (*plan) {
      const auto res = fcp::plan_once(scenario, config, seed);
      auto j = fcp::to_json(res.solution, res.input.corridor);
      j["scenario"] = scenario.name;
      j["seed"] = seed;
      j["corridor"] = fcp::to_json(res.input.corridor);
      write_file(out / "solution.json", j.dump(2) + "\n");
      log(Level::kInfo, std::string("status ") + fcp::to_string(res.solution.status));
      return res.solution.status == fcp::SolveStatus::kInfeasible ? 1 : 0;
    }
    if (*episode) {
      const auto log_data = fcp::run_episode(scenario, config, planner_kind(planner_name), seed);
      const auto metrics = fcp::compute_metrics(log_data);
      write_file(out / "episode.json", fcp::to_json(log_data).dump() + "\n");
      write_file(out / "metrics.json", fcp::to_json(metrics).dump(2) + "\n");
      if (log_data.aborted) {
        log(Level::kError, "episode aborted: " + log_data.abort_message);
        return 1;
      }
      log(Level::kInfo, std::string("passed ") + (metrics.passed ? "true" : "false"));
      return 0;
    }
    if (*mc) {
      const int threads =
        single_thread ? 1 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      const auto report =
        fcp::monte_carlo(scenario, config, planner_kind(planner_name), trials, seed, threads);
      write_file(out / "trials.csv", fcp::trials_csv(report));
      write_file(out / "aggregate.json", fcp::aggregate_json(report).dump(2) + "\n");
      const nlohmann::json timing{
        {"M_t", {{"mean", report.mean_runtime.mean}, {"std", report.mean_runtime.std}}}};
      write_file(out / "timing.json", timing.dump(2) + "\n");
      log(Level::kInfo, std::to_string(report.collisions) + " collisions in " + std::to_string(trials) + " trials");
      return 0;
    }
    if (*bench) {
      const auto report = fcp::run_bench(scenario, config, runs, seed);
      write_file(out / "histogram.csv", fcp::histogram_csv(fcp::histogram(report.solve_times, 40)));
      std::string samples = "run,solve_time,pipeline_time\n";
      for (std::size_t i = 0; i < report.solve_times.size(); ++i) {
        samples += std::to_string(i) + ',' + std::to_string(report.solve_times[i]) + ',' +
                   std::to_string(report.pipeline_times[i]) + '\n';
      }
      write_file(out / "samples.csv", samples);
      const nlohmann::json summary{
        {"runs", report.solve_times.size()},
        {"rejected", report.rejected},
        {"mean", report.mean},
        {"max", report.max}};
      write_file(out / "bench.json", summary.dump(2) + "\n");
      log(Level::kInfo, "mean " + std::to_string(report.mean) + " s, max " + std::to_string(report.max) + " s");
      return 0;
    }
  } catch (const fcp::PlanningError & e) {
    log(Level::kError, e.what());
    return e.code() == fcp::ErrorCode::kConfig ? 2 : 1;
  } catch (const std::exception & e) {
    log(Level::kError, e.what());
    return 2;
  }
  return 0;
}
