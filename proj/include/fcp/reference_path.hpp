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

#include "fcp/geometry.hpp"

namespace fcp
{

// s is arc length along the reference, d the signed lateral offset, positive
// to the left of the direction of travel.
struct FrenetPoint
{
  double s{0.0};
  double d{0.0};
};

/// Arc-length parameterized polyline with linearly interpolated position and
/// heading. Immutable once built.
///
/// The Frenet map uses the interpolated heading as the frame at every
/// station, so to_cartesian() and to_frenet() are exact inverses for points
/// closer to the path than its local radius of curvature.
class ReferencePath
{
public:
  /// Resamples `waypoints` at no more than `resample_spacing` and computes
  /// arc length, unwrapped central-difference headings and curvature data.
  /// Queries may extrapolate `extrapolation_tolerance` past either end along
  /// the end tangents; a negative value selects 2 * resample_spacing.
  ///
  /// Throws PlanningError(kDegenerateReference) for fewer than two distinct
  /// points, a total length below the spacing, or a heading jump >= pi/2
  /// between adjacent samples.
  static ReferencePath build(
    std::span<const Vec2> waypoints, double resample_spacing,
    double extrapolation_tolerance = -1.0);

  std::span<const Vec2> waypoints() const { return points_; }
  std::span<const double> cum_arclength() const { return arclength_; }
  std::span<const double> heading() const { return heading_; }
  double length() const { return arclength_.back(); }
  double extrapolation_tolerance() const { return extrapolation_tolerance_; }
  double min_radius_of_curvature() const { return min_radius_; }

  // Position and heading at arc length s; s outside [0, length] extends the
  // end tangents. No domain check.
  Vec2 position_at(double s) const;
  double heading_at(double s) const;

  /// heading(s0 + (k + 1) ds) - heading(s0 + k ds) for k = 0..n-1. Stations
  /// past the ends see the end heading, so the deltas there are zero.
  std::vector<double> heading_deltas(double s0, double ds, int n) const;

  /// Closest-frame projection. Throws PlanningError(kOutOfDomain) when the
  /// point is behind the start or past the end by more than the tolerance.
  FrenetPoint to_frenet(const Vec2 & p) const;

  /// Throws PlanningError(kOutOfDomain) for s outside the tolerated extent.
  Vec2 to_cartesian(const FrenetPoint & fp) const;

private:
  ReferencePath() = default;

  std::size_t segment_index(double s) const;

  std::vector<Vec2> points_;
  std::vector<double> arclength_;
  std::vector<double> heading_;
  double extrapolation_tolerance_{0.0};
  double min_radius_{0.0};
};

inline ReferencePath build_reference(std::span<const Vec2> waypoints, double resample_spacing)
{
  return ReferencePath::build(waypoints, resample_spacing);
}

inline FrenetPoint cart_to_frenet(const Vec2 & p, const ReferencePath & ref)
{
  return ref.to_frenet(p);
}

inline Vec2 frenet_to_cart(const FrenetPoint & fp, const ReferencePath & ref)
{
  return ref.to_cartesian(fp);
}

}  // namespace fcp
