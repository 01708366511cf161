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

#include <optional>
#include <span>
#include <vector>

#include "fcp/boundary_generator.hpp"
#include "fcp/kinematics.hpp"
#include "fcp/obstacle_processor.hpp"

namespace fcp
{

// Q_d and Q_u are diagonal with constant entries.
struct PlannerWeights
{
  double q_d{1.0};
  double q_u{10.0};
  double lambda_curve{1.0};
  double lambda_risk{0.2};
  double lambda_dyn{5.0};
  double lambda_alpha{1e4};
  double alpha_max{0.3};
  double ds{1.0};
  int n{60};
  double l_f{1.5};
  double l_r{1.5};
  double delta_min{-0.6};
  double delta_max{0.6};
  double eps_guard{0.2};
  double eps_dyn{0.04};
  int max_iterations{100};
  double tolerance{1e-4};

  // Throws PlanningError(kConfig) on negative weights or bad geometry.
  void validate() const;
};

// u[k] steers from station k to k + 1; alpha[k] relaxes the bounds at
// station k + 1. Both have n - 1 entries.
struct ControlSequence
{
  std::vector<double> u;
  std::vector<double> alpha;
};

enum class SolveStatus { kOptimal, kMaxIter, kInfeasible };

const char * to_string(SolveStatus status);

// Everything needed to resume the solver: raw iterate, multipliers, penalty.
struct WarmStart
{
  ControlSequence controls;
  std::vector<double> mu_lower;
  std::vector<double> mu_upper;
  double penalty{0.0};
};

struct PlannerSolution
{
  // n waypoints at the corridor stations; path[0] is the measured state.
  std::vector<FrenetPoint> path;
  std::vector<double> phi;
  ControlSequence controls;
  // Per-step actuation boxes the controls were projected onto.
  std::vector<ActuationBounds> control_bounds;
  double cost{0.0};
  int iterations{0};
  // Largest excursion outside the unrelaxed corridor.
  double max_violation{0.0};
  double solve_time{0.0};
  SolveStatus status{SolveStatus::kOptimal};
  WarmStart warm_start;
};

struct CostEvaluation
{
  double cost{0.0};
  // d cost / d (u_0..u_{n-2}, alpha_0..alpha_{n-2}).
  std::vector<double> gradient;
};

/// Penalized objective of the path optimizer by single shooting, with the
/// gradient obtained by reverse accumulation through the rollout. The
/// centring term only applies at stations the corridor marks as tightened.
/// Throws PlanningError(kSingularityGuard) if the rollout hits the guard.
CostEvaluation evaluate_cost(
  const ControlSequence & controls, const Corridor & corridor,
  std::span<const LateralPrediction> dynamic, const PlannerWeights & weights,
  const SpaceState & init);

/// Rolls the controls out from `init`. Throws on the singularity guard.
std::vector<SpaceState> rollout(
  const SpaceState & init, std::span<const double> u, const PlannerWeights & weights);

/// d(d_k)/d(u_j) for k = 0..n-1 (rows) and j = 0..n-2 (columns), row-major.
std::vector<double> rollout_jacobian(
  const SpaceState & init, std::span<const double> u, const PlannerWeights & weights);

/// Curvature-shifted actuation boxes for the n - 1 steps; `heading_deltas`
/// may be empty for a straight reference.
std::vector<ActuationBounds> actuation_bounds(
  std::span<const double> heading_deltas, const PlannerWeights & weights);

/// Augmented-Lagrangian projected Gauss-Newton solve of the path problem
/// over (u, alpha) with box constraints on both. Never throws for
/// infeasibility; the status reports it.
PlannerSolution solve(
  const Corridor & corridor, std::span<const LateralPrediction> dynamic,
  const PlannerWeights & weights, const SpaceState & init, std::span<const double> heading_deltas,
  const WarmStart * warm = nullptr);

/// Drops the first `steps` controls of a previous solution and repeats the
/// last one so the iterate lines up with a corridor that moved forward.
WarmStart shift_warm_start(const WarmStart & previous, int steps);

}  // namespace fcp
