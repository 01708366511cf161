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

#include <map>
#include <vector>

#include "fcp/obstacle_processor.hpp"

namespace fcp
{

// Which corridor edge a static obstacle bounds. kLower means the obstacle
// raises the lower bound and the ego passes above it.
enum class DeviationLabel { kLower, kUpper, kRisk };

struct DeviationDecision
{
  DeviationLabel label{DeviationLabel::kLower};
  double lower_gap{0.0};
  double upper_gap{0.0};
};

/// Gap rule of the decision tree. A gap is passable when it is at least
/// ego_width + 2 * clearance wide. With both gaps passable the larger one is
/// taken, then the one containing d = 0, then the upper one (label kLower);
/// in risk mode such obstacles are labelled kRisk instead.
///
/// Throws PlanningError(kBlocked) when neither gap is passable.
DeviationDecision classify_obstacle(
  const ObstaclePolygon & poly, double road_lb, double road_ub, double ego_width, double clearance,
  bool risk_mode = false);

struct GovernorConfig
{
  double clearance{0.25};
  bool risk_mode{false};
  // A settled label flips only when the other gap is wider by this much.
  double hysteresis{0.3};
};

struct Partition
{
  // Indices into ObstacleSet::all.
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
  std::vector<std::size_t> risk;
  std::map<int, DeviationDecision> decisions;
};

// Stateful wrapper adding per-obstacle hysteresis across planning cycles.
class DecisionGovernor
{
public:
  explicit DecisionGovernor(GovernorConfig config = {}) : config_(config) {}

  DeviationDecision classify(
    const ObstaclePolygon & poly, double road_lb, double road_ub, double ego_width);

  // Classifies every static obstacle overlapping [s_begin, s_end].
  Partition partition(
    const ObstacleSet & set, double road_lb, double road_ub, double ego_width, double s_begin,
    double s_end);

  void reset() { memory_.clear(); }
  const GovernorConfig & config() const { return config_; }

private:
  GovernorConfig config_;
  std::map<int, DeviationLabel> memory_;
};

}  // namespace fcp
