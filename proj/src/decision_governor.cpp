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

#include "fcp/decision_governor.hpp"

#include <algorithm>
#include <string>

#include "fcp/errors.hpp"

namespace fcp
{

DeviationDecision classify_obstacle(
  const ObstaclePolygon & poly, double road_lb, double road_ub, double ego_width, double clearance,
  bool risk_mode)
{
  const double min_d = poly.min_d();
  const double max_d = poly.max_d();
  DeviationDecision out;
  out.lower_gap = std::max(0.0, min_d - road_lb);
  out.upper_gap = std::max(0.0, road_ub - max_d);

  const double passable = ego_width + 2.0 * clearance;
  const bool lower_ok = out.lower_gap >= passable;
  const bool upper_ok = out.upper_gap >= passable;

  if (!lower_ok && !upper_ok) {
    throw PlanningError(
      ErrorCode::kBlocked, "no passable gap at obstacle " + std::to_string(poly.id));
  }
  if (upper_ok && !lower_ok) {
    out.label = DeviationLabel::kLower;
  } else if (lower_ok && !upper_ok) {
    out.label = DeviationLabel::kUpper;
  } else if (risk_mode) {
    out.label = DeviationLabel::kRisk;
  } else if (out.upper_gap != out.lower_gap) {
    out.label = out.upper_gap > out.lower_gap ? DeviationLabel::kLower : DeviationLabel::kUpper;
  } else if (road_lb <= 0.0 && 0.0 <= min_d && !(max_d <= 0.0 && 0.0 <= road_ub)) {
    // Only the lower gap contains the reference line.
    out.label = DeviationLabel::kUpper;
  } else {
    out.label = DeviationLabel::kLower;
  }
  return out;
}

DeviationDecision DecisionGovernor::classify(
  const ObstaclePolygon & poly, double road_lb, double road_ub, double ego_width)
{
  auto decision =
    classify_obstacle(poly, road_lb, road_ub, ego_width, config_.clearance, config_.risk_mode);

  const double passable = ego_width + 2.0 * config_.clearance;
  const bool both_ok = decision.lower_gap >= passable && decision.upper_gap >= passable;
  const auto it = memory_.find(poly.id);
  if (both_ok && it != memory_.end() && it->second != DeviationLabel::kRisk &&
      decision.label != DeviationLabel::kRisk && it->second != decision.label) {
    // Incumbent kLower passes through the upper gap and vice versa.
    const double incumbent_gap =
      it->second == DeviationLabel::kLower ? decision.upper_gap : decision.lower_gap;
    const double challenger_gap =
      it->second == DeviationLabel::kLower ? decision.lower_gap : decision.upper_gap;
    if (challenger_gap <= incumbent_gap + config_.hysteresis) {
      decision.label = it->second;
    }
  }
  memory_[poly.id] = decision.label;
  return decision;
}

Partition DecisionGovernor::partition(
  const ObstacleSet & set, double road_lb, double road_ub, double ego_width, double s_begin,
  double s_end)
{
  Partition out;
  for (std::size_t i = 0; i < set.all.size(); ++i) {
    const auto & poly = set.all[i];
    if (poly.is_dynamic || poly.max_s() < s_begin || poly.min_s() > s_end) {
      continue;
    }
    const auto decision = classify(poly, road_lb, road_ub, ego_width);
    out.decisions[poly.id] = decision;
    switch (decision.label) {
      case DeviationLabel::kLower:
        out.lower.push_back(i);
        break;
      case DeviationLabel::kUpper:
        out.upper.push_back(i);
        break;
      case DeviationLabel::kRisk:
        out.risk.push_back(i);
        break;
    }
  }
  return out;
}

}  // namespace fcp
