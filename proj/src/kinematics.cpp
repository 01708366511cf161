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

#include "fcp/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "fcp/errors.hpp"

namespace fcp
{

double beta_exact(double delta, double l_f, double l_r)
{
  if (!(std::abs(delta) < 0.5 * std::numbers::pi)) {
    throw PlanningError(ErrorCode::kDomainError, "steering angle outside (-pi/2, pi/2)");
  }
  return std::atan(l_r / (l_f + l_r) * std::tan(delta));
}

double beta_approx(double delta, double l_f, double l_r)
{
  if (!(std::abs(delta) < 0.5 * std::numbers::pi)) {
    throw PlanningError(ErrorCode::kDomainError, "steering angle outside (-pi/2, pi/2)");
  }
  return l_r / (l_f + l_r) * delta;
}

SpaceState propagate(const SpaceState & state, double u, double ds, double l_r, double eps_guard)
{
  const double theta = state.phi + u;
  if (!(std::abs(theta) <= 0.5 * std::numbers::pi - eps_guard)) {
    throw PlanningError(ErrorCode::kSingularityGuard, "path nearly orthogonal to the reference");
  }
  return {
    state.s + ds,
    state.d + std::tan(theta) * ds,
    state.phi + ds / l_r * std::sin(u) / std::cos(theta),
  };
}

ActuationBounds curvature_bounds(
  double heading_delta, double ds, double l_r, double l_f, double delta_min, double delta_max)
{
  const double a = l_r / (l_f + l_r);
  const double u_min = a * delta_min;
  const double u_max = a * delta_max;
  const double u_ref = std::atan(l_r / ds * heading_delta);
  if (u_ref < u_min || u_ref > u_max) {
    throw PlanningError(
      ErrorCode::kEmptyActuationSet, "reference curvature exceeds the steering limits");
  }
  return {u_min - u_ref, u_max - u_ref};
}

ActuationBounds curvature_bounds(
  const ReferencePath & ref, double s0, int k, double ds, double l_r, double l_f, double delta_min,
  double delta_max)
{
  const double delta = ref.heading_at(s0 + (k + 1) * ds) - ref.heading_at(s0 + k * ds);
  return curvature_bounds(delta, ds, l_r, l_f, delta_min, delta_max);
}

}  // namespace fcp
