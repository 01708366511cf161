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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fcp/geometry.hpp"
#include "fcp/obstacle_processor.hpp"

namespace fcp
{

struct EgoSpec
{
  // Initial Frenet state; heading is relative to the reference tangent.
  double s{0.0};
  double d{0.0};
  double heading{0.0};
  double speed{8.0};
  double length{4.5};
  double width{1.8};
};

struct NoiseModel
{
  double position_std{0.1};
  double heading_std{0.02};
};

struct Scenario
{
  std::string name;
  std::vector<Vec2> reference;
  double road_lb{-3.5};
  double road_ub{3.5};
  EgoSpec ego;
  std::vector<RawObstacle> obstacles;
  NoiseModel noise;
  double cycle_period{0.1};
  double duration{30.0};
  // Flat key=value overrides from the scenario's "planner" block.
  std::vector<std::pair<std::string, std::string>> overrides;
};

/// Throws PlanningError(kConfig) on malformed input or when the ego starts
/// outside the road or the cycle period is not positive.
Scenario parse_scenario(const std::string & text);
Scenario load_scenario(const std::filesystem::path & path);
void validate(const Scenario & scenario);

}  // namespace fcp
