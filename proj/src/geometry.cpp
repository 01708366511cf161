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

#include "fcp/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "fcp/errors.hpp"

namespace fcp
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kDegenerateReference:
      return "DegenerateReference";
    case ErrorCode::kOutOfDomain:
      return "OutOfDomain";
    case ErrorCode::kBlocked:
      return "Blocked";
    case ErrorCode::kDomainError:
      return "DomainError";
    case ErrorCode::kSingularityGuard:
      return "SingularityGuard";
    case ErrorCode::kEmptyActuationSet:
      return "EmptyActuationSet";
    case ErrorCode::kInfeasible:
      return "Infeasible";
    case ErrorCode::kNoPath:
      return "NoPath";
    case ErrorCode::kEpisodeAborted:
      return "EpisodeAborted";
    case ErrorCode::kConfig:
      return "ConfigError";
  }
  return "Unknown";
}

double wrap_angle(double a)
{
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::fmod(a + std::numbers::pi, kTwoPi);
  if (a <= 0.0) {
    a += kTwoPi;
  }
  return a - std::numbers::pi;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points)
{
  std::sort(points.begin(), points.end(), [](const Vec2 & a, const Vec2 & b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const auto n = points.size();
  if (n <= 2) {
    return points;
  }

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) {
      --k;
    }
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, lower = k + 1; i > 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i - 1]) <= 0.0) {
      --k;
    }
    hull[k++] = points[i - 1];
  }
  hull.resize(k - 1);
  // All points collinear: the chain collapses to the two extremes.
  if (hull.size() < 3) {
    return {points.front(), points.back()};
  }
  return hull;
}

std::vector<Vec2> regular_polygon(const Vec2 & center, double radius, int sides)
{
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(sides));
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / sides;
    out.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return out;
}

std::vector<Vec2> sample_edges(std::span<const Vec2> polygon, double spacing)
{
  std::vector<Vec2> out;
  const auto n = polygon.size();
  if (n == 0) {
    return out;
  }
  if (n == 1) {
    out.push_back(polygon[0]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 & a = polygon[i];
    const Vec2 & b = polygon[(i + 1) % n];
    const double len = (b - a).norm();
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int j = 0; j < pieces; ++j) {
      const double t = static_cast<double>(j) / pieces;
      out.push_back(a + (b - a) * t);
    }
    if (n == 2) {
      out.push_back(b);
      break;
    }
  }
  return out;
}

std::vector<Vec2> oriented_box(
  const Vec2 & center, double yaw, double half_length, double half_width)
{
  const Vec2 t{std::cos(yaw), std::sin(yaw)};
  const Vec2 n{-t.y, t.x};
  return {
    center + t * (-half_length) + n * (-half_width),
    center + t * half_length + n * (-half_width),
    center + t * half_length + n * half_width,
    center + t * (-half_length) + n * half_width,
  };
}

double signed_area(std::span<const Vec2> polygon)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    twice += polygon[i].cross(polygon[(i + 1) % polygon.size()]);
  }
  return 0.5 * twice;
}

double containment_margin(std::span<const Vec2> polygon, const Vec2 & p)
{
  if (polygon.size() == 1) {
    return -(p - polygon[0]).norm();
  }
  if (polygon.size() == 2) {
    return -point_segment_distance(p, polygon[0], polygon[1]);
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Vec2 & a = polygon[i];
    const Vec2 & b = polygon[(i + 1) % polygon.size()];
    const double len = (b - a).norm();
    if (len > 0.0) {
      margin = std::min(margin, cross(a, b, p) / len);
    }
  }
  return margin;
}

double point_segment_distance(const Vec2 & p, const Vec2 & a, const Vec2 & b)
{
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) {
    return (p - a).norm();
  }
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

bool segments_intersect(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d)
{
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  auto on_segment = [](const Vec2 & p, const Vec2 & q, const Vec2 & r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

double polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b)
{
  if (a.empty() || b.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.size() >= 3 && containment_margin(a, b[0]) >= 0.0) {
    return 0.0;
  }
  if (b.size() >= 3 && containment_margin(b, a[0]) >= 0.0) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2 & a0 = a[i];
    const Vec2 & a1 = a[(i + 1) % a.size()];
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Vec2 & b0 = b[j];
      const Vec2 & b1 = b[(j + 1) % b.size()];
      if (segments_intersect(a0, a1, b0, b1)) {
        return 0.0;
      }
      best = std::min(
        {best, point_segment_distance(a0, b0, b1), point_segment_distance(b0, a0, a1)});
    }
  }
  return best;
}

}  // namespace fcp
