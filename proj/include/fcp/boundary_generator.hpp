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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fcp/obstacle_processor.hpp"

namespace fcp
{

// Lateral bounds of the ego centroid at stations s0 + k * ds, k = 0..n-1.
struct Corridor
{
  double s0{0.0};
  double ds{1.0};
  int n{0};
  std::vector<double> d_lb;
  std::vector<double> d_ub;
  // Nonzero where an obstacle point moved either bound off the road limit.
  std::vector<std::uint8_t> tightened;
  double road_lb{0.0};
  double road_ub{0.0};

  double station(int k) const { return s0 + k * ds; }
  double midline(int k) const { return 0.5 * (d_lb[k] + d_ub[k]); }
  bool feasible(double ego_width = 0.0) const;
};

struct BoundaryStats
{
  std::size_t points_visited{0};
  std::size_t cell_writes{0};
};

/// Single pass over all obstacle edge samples. A point in cell
/// ind = floor((p_s - s0) / ds) tightens cells ind and ind + 1; points outside
/// the horizon are skipped.
Corridor generate_bounds(
  std::span<const ObstaclePolygon> lb_set, std::span<const ObstaclePolygon> ub_set, double l_lb,
  double l_ub, int n, double ds, double s0, BoundaryStats * stats = nullptr);

}  // namespace fcp
