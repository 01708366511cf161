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

#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "fcp/astar.hpp"
#include "fcp/planner.hpp"
#include "fcp/scenario.hpp"

namespace fcp
{

struct HarnessConfig
{
  PipelineConfig pipeline;
  AStarConfig astar;
  NoiseModel noise;
  double cycle_period{0.1};
  double duration{30.0};
  double ego_speed{8.0};
  // Time window over which the ego checks its path against moving obstacles.
  double yield_lookahead{3.0};
};

/// Sets one knob by name. Accepts planner weights (ds, n, q_d, q_u,
/// lambda_curve, lambda_risk, lambda_dyn, lambda_alpha, alpha_max, l_f, l_r,
/// delta_min, delta_max, eps_guard, eps_dyn, max_iterations, tolerance) and
/// harness knobs (margin_long, margin_lat, clearance, hysteresis, risk_mode,
/// dbscan_eps, dbscan_min_pts, pedestrian_radius, sample_spacing,
/// prediction_horizon, astar_resolution, astar_deviation_weight,
/// noise_position_std, noise_heading_std, cycle_period, duration, ego_speed,
/// yield_lookahead). Throws PlanningError(kConfig) on unknown keys or
/// unparsable values.
void apply_override(HarnessConfig & config, std::string_view key, std::string_view value);

/// Parses "key=value".
std::pair<std::string, std::string> split_override(std::string_view assignment);

/// Scenario defaults, then the scenario's own overrides, then `overrides`.
HarnessConfig make_config(
  const Scenario & scenario, std::span<const std::pair<std::string, std::string>> overrides = {});

}  // namespace fcp
