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

#include "fcp/boundary_generator.hpp"

#include <cmath>

#include "fcp/errors.hpp"

namespace fcp
{

bool Corridor::feasible(double ego_width) const
{
  for (int k = 0; k < n; ++k) {
    if (d_lb[k] + ego_width > d_ub[k]) {
      return false;
    }
  }
  return true;
}

Corridor generate_bounds(
  std::span<const ObstaclePolygon> lb_set, std::span<const ObstaclePolygon> ub_set, double l_lb,
  double l_ub, int n, double ds, double s0, BoundaryStats * stats)
{
  if (!(ds > 0.0) || n < 2 || !(l_lb < l_ub)) {
    throw PlanningError(ErrorCode::kDomainError, "generate_bounds: invalid horizon or road limits");
  }
  Corridor c;
  c.s0 = s0;
  c.ds = ds;
  c.n = n;
  c.road_lb = l_lb;
  c.road_ub = l_ub;
  c.d_lb.assign(static_cast<std::size_t>(n), l_lb);
  c.d_ub.assign(static_cast<std::size_t>(n), l_ub);
  c.tightened.assign(static_cast<std::size_t>(n), 0);

  BoundaryStats local;
  auto sweep = [&](std::span<const ObstaclePolygon> set, bool lower) {
    for (const auto & obstacle : set) {
      for (const auto & p : obstacle.edge_samples) {
        ++local.points_visited;
        const double cell = std::floor((p.s - s0) / ds);
        if (!(cell >= 0.0) || cell >= static_cast<double>(n)) {
          continue;
        }
        const auto ind = static_cast<std::size_t>(cell);
        // Obstacle corners: the point also constrains the next station.
        const std::size_t last = ind + 1 < static_cast<std::size_t>(n) ? ind + 1 : ind;
        for (std::size_t k = ind; k <= last; ++k) {
          if (lower ? c.d_lb[k] < p.d : c.d_ub[k] > p.d) {
            (lower ? c.d_lb[k] : c.d_ub[k]) = p.d;
            c.tightened[k] = 1;
            ++local.cell_writes;
          }
        }
      }
    }
  };
  sweep(lb_set, true);
  sweep(ub_set, false);
  if (stats) {
    *stats = local;
  }
  return c;
}

}  // namespace fcp
