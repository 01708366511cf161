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
#include "fcp/decision_governor.hpp"
#include "fcp/obstacle_processor.hpp"
#include "fcp/path_optimizer.hpp"
#include "fcp/reference_path.hpp"

namespace fcp
{

struct PipelineConfig
{
  ProcessorConfig processor;
  GovernorConfig governor;
  PlannerWeights weights;
  // Road edges in the Frenet frame.
  double road_lb{-3.5};
  double road_ub{3.5};
  double ego_length{4.5};
  double ego_width{1.8};
};

// Everything the upstream stages produce for one cycle. Shared verbatim by
// the optimizer and the grid baseline.
struct CorridorInput
{
  ObstacleSet obstacles;
  Partition partition;
  Corridor corridor;
  // Moving obstacles plus static ones the governor marked as risk.
  std::vector<LateralPrediction> dynamic;
  std::vector<double> heading_deltas;
};

struct CycleResult
{
  CorridorInput input;
  PlannerSolution solution;
  // Wall time of the whole pipeline in seconds.
  double runtime{0.0};
};

class Planner
{
public:
  Planner(const ReferencePath & ref, PipelineConfig config);

  /// Data processing, decision and boundary stages. Corridor bounds refer to
  /// the ego centroid: the road edges shrink by the ego half-width plus the
  /// lateral margin, and static obstacles already carry the ego extents.
  /// Throws PlanningError(kBlocked) if some obstacle leaves no passable gap.
  CorridorInput build_corridor(const SpaceState & ego, std::span<const RawObstacle> obstacles);

  /// Full cycle, warm-started from the previous one. Throws
  /// PlanningError(kBlocked) or (kEmptyActuationSet); infeasibility is
  /// reported through the solution status.
  CycleResult plan(const SpaceState & ego, std::span<const RawObstacle> obstacles);

  void reset();

  const PipelineConfig & config() const { return config_; }
  const ReferencePath & reference() const { return ref_; }

private:
  const ReferencePath & ref_;
  PipelineConfig config_;
  DecisionGovernor governor_;
  std::optional<WarmStart> warm_;
  double warm_s0_{0.0};
};

/// Lateral limits of the ego centroid for the given road edges.
std::pair<double, double> centroid_limits(const PipelineConfig & config);

}  // namespace fcp
