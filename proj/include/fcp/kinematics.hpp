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
#include <vector>

#include "fcp/reference_path.hpp"

namespace fcp
{

// State of the space-domain bicycle model in the Frenet frame. phi is the
// heading relative to the reference tangent.
struct SpaceState
{
  double s{0.0};
  double d{0.0};
  double phi{0.0};
};

/// atan(a * tan(delta)) with a = l_r / (l_f + l_r). Throws
/// PlanningError(kDomainError) for |delta| >= pi/2.
double beta_exact(double delta, double l_f, double l_r);

/// Linear proxy a * delta, never larger in magnitude than beta_exact.
double beta_approx(double delta, double l_f, double l_r);

/// One longitudinal step of ds:
///   s   += ds
///   d   += tan(phi + u) * ds
///   phi += ds / l_r * sin(u) / cos(phi + u)
/// Throws PlanningError(kSingularityGuard) if |phi + u| > pi/2 - eps_guard.
SpaceState propagate(const SpaceState & state, double u, double ds, double l_r, double eps_guard = 0.2);

struct ActuationBounds
{
  double lower{0.0};
  double upper{0.0};
};

/// Box for the Frenet steering proxy u_k such that u_k + u_ref stays within
/// the vehicle limits, where u_ref = atan(l_r / ds * heading_delta) is the
/// steering needed to follow the reference. Throws
/// PlanningError(kEmptyActuationSet) if following the reference alone already
/// exceeds the steering limits.
ActuationBounds curvature_bounds(
  double heading_delta, double ds, double l_r, double l_f, double delta_min, double delta_max);

ActuationBounds curvature_bounds(
  const ReferencePath & ref, double s0, int k, double ds, double l_r, double l_f, double delta_min,
  double delta_max);

}  // namespace fcp
