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


#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcp/config.hpp"
#include "fcp/errors.hpp"
#include "fcp/scenario.hpp"

namespace fcp
{

enum class PlannerKind { kFcp, kAStar };

const char * to_string(PlannerKind kind);

struct CycleRecord
{
  int cycle{0};
  double time{0.0};
  // Ego state at the start of the cycle.
  SpaceState ego;
  Pose2 ego_pose;
  double speed{0.0};
  Corridor corridor;
  std::vector<FrenetPoint> path;
  // The same path in world coordinates.
  std::vector<Vec2> path_xy;
  std::vector<double> alpha;
  double runtime{0.0};
  SolveStatus status{SolveStatus::kOptimal};
  double cost{0.0};
  int iterations{0};
  double max_violation{0.0};
  // Distance from the ego footprint to the nearest true obstacle footprint;
  // nullopt without obstacles.
  std::optional<double> nearest_distance;
  bool bound_exit{false};
  bool collision{false};
};

struct EpisodeLog
{
  std::string scenario;
  PlannerKind planner{PlannerKind::kFcp};
  std::uint64_t seed{0};
  std::vector<CycleRecord> cycles;
  bool aborted{false};
  std::optional<ErrorCode> abort_cause;
  std::string abort_message;
};

struct MetricsReport
{
  double mean_runtime{0.0};
  double max_delta_yaw{0.0};
  double mean_delta_yaw{0.0};
  double mean_deviation{0.0};
  // Both nullopt when the episode saw no obstacles.
  std::optional<double> min_distance;
  std::optional<double> mean_distance;
  int cycles{0};
  bool collision{false};
  bool bound_exit{false};
  bool aborted{false};
  bool passed{false};
};

/// Closed-loop simulation. Each cycle perturbs the perceived obstacle poses,
/// plans, and moves the ego along the planned path at the scripted speed
/// (held at zero while its path would run into a moving obstacle within the
/// look-ahead window). Ends at the duration, when the horizon runs past the
/// reference end, or on a planning failure, which is recorded as the abort
/// cause.
EpisodeLog run_episode(
  const Scenario & scenario, const HarnessConfig & config, PlannerKind planner, std::uint64_t seed);

MetricsReport compute_metrics(const EpisodeLog & log);

/// One planning cycle from the scenario's initial state with the first
/// cycle's perceived obstacles for `seed`.
CycleResult plan_once(const Scenario & scenario, const HarnessConfig & config, std::uint64_t seed);

struct TrialResult
{
  int trial{0};
  std::uint64_t seed{0};
  MetricsReport metrics;
  std::string abort_cause;
};

struct MetricSummary
{
  double mean{0.0};
  double std{0.0};
};

struct MonteCarloReport
{
  PlannerKind planner{PlannerKind::kFcp};
  std::uint64_t seed{0};
  std::vector<TrialResult> trials;
  int passed{0};
  int collisions{0};
  int bound_exits{0};
  int aborted{0};
  MetricSummary mean_runtime;
  MetricSummary max_delta_yaw;
  MetricSummary mean_delta_yaw;
  MetricSummary mean_deviation;
  MetricSummary min_distance;
  MetricSummary mean_distance;
};

/// Seed of trial `index` derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, int index);

/// Shifts every vehicle along and across the local reference direction and
/// turns it, uniformly within the given ranges. Velocities are kept.
Scenario perturb_scenario(
  const Scenario & scenario, std::uint64_t seed, double longitudinal = 10.0, double lateral = 2.0,
  double yaw = 10.0 * 3.14159265358979323846 / 180.0);

/// Trial i runs run_episode(perturb_scenario(sc, s_i), s_i) with
/// s_i = trial_seed(seed, i). Trials run on `threads` workers; results do
/// not depend on the thread count.
MonteCarloReport monte_carlo(
  const Scenario & scenario, const HarnessConfig & config, PlannerKind planner, int trials,
  std::uint64_t seed, int threads = 1);

struct BenchReport
{
  // Optimizer wall time per successful randomized solve.
  std::vector<double> solve_times;
  // Whole-pipeline wall time for the same runs.
  std::vector<double> pipeline_times;
  int rejected{0};
  double mean{0.0};
  double max{0.0};
};

/// Cold single-cycle solves on randomized ego states and obstacle poses.
/// Draws that leave no passable gap are redrawn and counted as rejected.
BenchReport run_bench(
  const Scenario & scenario, const HarnessConfig & config, int runs, std::uint64_t seed);

// (bin lower edge, count) pairs with `bins` equal bins over [0, max].
std::vector<std::pair<double, int>> histogram(const std::vector<double> & samples, int bins);

}  // namespace fcp
