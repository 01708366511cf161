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


#include "fcp/planner.hpp"

#include <chrono>
#include <cmath>
#include <utility>

#include "fcp/errors.hpp"

namespace fcp
{

std::pair<double, double> centroid_limits(const PipelineConfig & config)
{
  const double inset = 0.5 * config.ego_width + config.processor.margin_lat;
  return {config.road_lb + inset, config.road_ub - inset};
}

Planner::Planner(const ReferencePath & ref, PipelineConfig config)
: ref_(ref), config_(std::move(config)), governor_(config_.governor)
{
  config_.weights.validate();
}

void Planner::reset()
{
  governor_.reset();
  warm_.reset();
}

CorridorInput Planner::build_corridor(const SpaceState & ego, std::span<const RawObstacle> obstacles)
{
  const auto & w = config_.weights;
  const auto [l_lb, l_ub] = centroid_limits(config_);
  CorridorInput in;
  in.obstacles = process_obstacles(
    obstacles, ref_, config_.processor, ego.s, w.n, w.ds, 0.5 * config_.ego_length,
    0.5 * config_.ego_width);

  // The ego footprint is already part of every static polygon, so the gap
  // test runs with a point-sized ego.
  const double s_end = ego.s + (w.n - 1) * w.ds;
  in.partition = governor_.partition(in.obstacles, l_lb, l_ub, 0.0, ego.s, s_end);

  std::vector<ObstaclePolygon> lower;
  std::vector<ObstaclePolygon> upper;
  for (auto i : in.partition.lower) {
    lower.push_back(in.obstacles.all[i]);
  }
  for (auto i : in.partition.upper) {
    upper.push_back(in.obstacles.all[i]);
  }
  in.corridor = generate_bounds(lower, upper, l_lb, l_ub, w.n, w.ds, ego.s);

  for (const auto & poly : in.obstacles.all) {
    if (poly.is_dynamic) {
      in.dynamic.push_back(poly.predicted_d);
    }
  }
  for (auto i : in.partition.risk) {
    const auto & poly = in.obstacles.all[i];
    LateralPrediction pred(static_cast<std::size_t>(w.n));
    const double centre = 0.5 * (poly.min_d() + poly.max_d());
    for (int k = 0; k < w.n; ++k) {
      const double s = in.corridor.station(k);
      if (s >= poly.min_s() && s <= poly.max_s()) {
        pred[static_cast<std::size_t>(k)] = centre;
      }
    }
    in.dynamic.push_back(std::move(pred));
  }
  in.heading_deltas = ref_.heading_deltas(ego.s, w.ds, w.n - 1);
  return in;
}

CycleResult Planner::plan(const SpaceState & ego, std::span<const RawObstacle> obstacles)
{
  const auto t0 = std::chrono::steady_clock::now();
  CycleResult out;
  out.input = build_corridor(ego, obstacles);

  std::optional<WarmStart> shifted;
  if (warm_) {
    const int steps = static_cast<int>(std::lround((ego.s - warm_s0_) / config_.weights.ds));
    if (steps >= 0 && steps < config_.weights.n - 1) {
      shifted = shift_warm_start(*warm_, steps);
    }
  }
  out.solution = solve(
    out.input.corridor, out.input.dynamic, config_.weights, ego, out.input.heading_deltas,
    shifted ? &*shifted : nullptr);
  if (out.solution.status == SolveStatus::kInfeasible) {
    warm_.reset();
  } else {
    warm_ = out.solution.warm_start;
    warm_s0_ = ego.s;
  }
  out.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace fcp
