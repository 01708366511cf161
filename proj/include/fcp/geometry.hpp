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

#include <cmath>
#include <span>
#include <vector>

namespace fcp
{

struct Vec2
{
  double x{0.0};
  double y{0.0};

  Vec2 operator+(const Vec2 & o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2 & o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  bool operator==(const Vec2 & o) const = default;

  double dot(const Vec2 & o) const { return x * o.x + y * o.y; }
  double cross(const Vec2 & o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline double cross(const Vec2 & o, const Vec2 & a, const Vec2 & b)
{
  return (a - o).cross(b - o);
}

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

// Andrew's monotone chain. Returns the hull counterclockwise without
// collinear vertices, starting from the lexicographically smallest point.
// Degenerate inputs return 1 (all points equal) or 2 (collinear) vertices.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Regular polygon with the given circumradius, counterclockwise.
std::vector<Vec2> regular_polygon(const Vec2 & center, double radius, int sides);

// Points along every edge of a closed polygon, spaced no more than `spacing`
// apart, vertices included.
std::vector<Vec2> sample_edges(std::span<const Vec2> polygon, double spacing);

// Corners of an oriented rectangle, counterclockwise.
std::vector<Vec2> oriented_box(
  const Vec2 & center, double yaw, double half_length, double half_width);

double signed_area(std::span<const Vec2> polygon);

// Minimum signed-area margin of `p` against the edges of a counterclockwise
// convex polygon: >= 0 inside or on the boundary.
double containment_margin(std::span<const Vec2> polygon, const Vec2 & p);

double point_segment_distance(const Vec2 & p, const Vec2 & a, const Vec2 & b);

bool segments_intersect(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d);

// Euclidean distance between two convex polygons, 0 when they overlap.
double polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace fcp
