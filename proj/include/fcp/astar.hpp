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

#include <vector>

#include "fcp/boundary_generator.hpp"
#include "fcp/kinematics.hpp"

namespace fcp
{

struct AStarConfig
{
  double resolution{0.25};
  double deviation_weight{0.5};
};

/// Grid search over (station, lateral level) cells inside the corridor.
/// Levels sit at integer multiples of the resolution. Moves go one station
/// forward (straight or one level up/down) or one level sideways within a
/// station; a move into a cell at offset d costs its length times
/// (1 + deviation_weight * |d|). The result has one waypoint per station,
/// the last cell visited there. Throws PlanningError(kNoPath).
std::vector<FrenetPoint> astar_baseline(
  const Corridor & corridor, const SpaceState & init, const AStarConfig & config = {});

}  // namespace fcp
