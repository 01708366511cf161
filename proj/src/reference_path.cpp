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

#include "fcp/reference_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "fcp/errors.hpp"

namespace fcp
{
namespace
{

constexpr double kRootTolerance = 1e-13;

Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

ReferencePath ReferencePath::build(
  std::span<const Vec2> waypoints, double resample_spacing, double extrapolation_tolerance)
{
  if (!(resample_spacing > 0.0)) {
    throw PlanningError(ErrorCode::kDegenerateReference, "resample spacing must be positive");
  }

  std::vector<Vec2> raw;
  for (const auto & p : waypoints) {
    if (raw.empty() || (p - raw.back()).norm() > 1e-9) {
      raw.push_back(p);
    }
  }
  if (raw.size() < 2) {
    throw PlanningError(ErrorCode::kDegenerateReference, "fewer than two distinct waypoints");
  }

  std::vector<double> raw_s(raw.size(), 0.0);
  for (std::size_t i = 1; i < raw.size(); ++i) {
    raw_s[i] = raw_s[i - 1] + (raw[i] - raw[i - 1]).norm();
  }
  const double total = raw_s.back();
  if (total < resample_spacing) {
    throw PlanningError(ErrorCode::kDegenerateReference, "reference shorter than one spacing");
  }

  ReferencePath ref;
  const auto pieces = static_cast<std::size_t>(std::ceil(total / resample_spacing - 1e-9));
  ref.points_.reserve(pieces + 1);
  std::size_t seg = 0;
  for (std::size_t i = 0; i <= pieces; ++i) {
    const double s = total * static_cast<double>(i) / static_cast<double>(pieces);
    while (seg + 2 < raw.size() && raw_s[seg + 1] < s) {
      ++seg;
    }
    const double len = raw_s[seg + 1] - raw_s[seg];
    const double t = std::clamp((s - raw_s[seg]) / len, 0.0, 1.0);
    ref.points_.push_back(raw[seg] + (raw[seg + 1] - raw[seg]) * t);
  }

  const auto n = ref.points_.size();
  ref.arclength_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    ref.arclength_[i] = ref.arclength_[i - 1] + (ref.points_[i] - ref.points_[i - 1]).norm();
  }

  ref.heading_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 & a = ref.points_[i == 0 ? 0 : i - 1];
    const Vec2 & b = ref.points_[i + 1 == n ? n - 1 : i + 1];
    ref.heading_[i] = std::atan2(b.y - a.y, b.x - a.x);
  }
  ref.min_radius_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) {
    // Unwrap so that the linear interpolation never crosses the branch cut.
    const double jump = wrap_angle(ref.heading_[i] - ref.heading_[i - 1]);
    if (std::abs(jump) >= 0.5 * std::numbers::pi) {
      throw PlanningError(ErrorCode::kDegenerateReference, "kinked reference");
    }
    ref.heading_[i] = ref.heading_[i - 1] + jump;
    if (jump != 0.0) {
      ref.min_radius_ = std::min(
        ref.min_radius_, (ref.arclength_[i] - ref.arclength_[i - 1]) / std::abs(jump));
    }
  }

  ref.extrapolation_tolerance_ =
    extrapolation_tolerance < 0.0 ? 2.0 * resample_spacing : extrapolation_tolerance;
  return ref;
}

std::size_t ReferencePath::segment_index(double s) const
{
  const auto it = std::upper_bound(arclength_.begin(), arclength_.end(), s);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - arclength_.begin(), 1));
  return std::min(idx, arclength_.size() - 1) - 1;
}

Vec2 ReferencePath::position_at(double s) const
{
  if (s <= 0.0) {
    return points_.front() + unit(heading_.front()) * s;
  }
  if (s >= length()) {
    return points_.back() + unit(heading_.back()) * (s - length());
  }
  const auto i = segment_index(s);
  const double t = (s - arclength_[i]) / (arclength_[i + 1] - arclength_[i]);
  return points_[i] + (points_[i + 1] - points_[i]) * t;
}

double ReferencePath::heading_at(double s) const
{
  if (s <= 0.0) {
    return heading_.front();
  }
  if (s >= length()) {
    return heading_.back();
  }
  const auto i = segment_index(s);
  const double t = (s - arclength_[i]) / (arclength_[i + 1] - arclength_[i]);
  return heading_[i] + (heading_[i + 1] - heading_[i]) * t;
}

std::vector<double> ReferencePath::heading_deltas(double s0, double ds, int n) const
{
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)));
  double prev = heading_at(s0);
  for (int k = 0; k < n; ++k) {
    const double next = heading_at(s0 + (k + 1) * ds);
    out[static_cast<std::size_t>(k)] = next - prev;
    prev = next;
  }
  return out;
}

FrenetPoint ReferencePath::to_frenet(const Vec2 & p) const
{
  std::optional<FrenetPoint> best;
  auto consider = [&best](double s, double d) {
    // Strict improvement only: equidistant candidates keep the smaller s.
    if (!best || std::abs(d) < std::abs(best->d) - 1e-12) {
      best = FrenetPoint{s, d};
    }
  };

  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Vec2 & a = points_[i];
    const Vec2 & b = points_[i + 1];
    if (best && point_segment_distance(p, a, b) > std::abs(best->d) + 1e-9) {
      continue;
    }
    const double len = arclength_[i + 1] - arclength_[i];
    const Vec2 e = (b - a) * (1.0 / len);
    const double th0 = heading_[i];
    const double rate = (heading_[i + 1] - th0) / len;

    // f(sigma) = (p - P(sigma)) . t(theta(sigma)) vanishes at the foot point.
    auto f = [&](double sigma) { return (p - (a + e * sigma)).dot(unit(th0 + rate * sigma)); };
    double lo = 0.0;
    double hi = len;
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo < 0.0 || f_hi > 0.0) {
      continue;
    }

    double sigma = f_lo == f_hi ? 0.0 : len * f_lo / (f_lo - f_hi);
    for (int it = 0; it < 60; ++it) {
      const double theta = th0 + rate * sigma;
      const Vec2 r = p - (a + e * sigma);
      const double val = r.dot(unit(theta));
      if (std::abs(val) < kRootTolerance) {
        break;
      }
      if (val > 0.0) {
        lo = sigma;
        f_lo = val;
      } else {
        hi = sigma;
      }
      const double slope = -e.dot(unit(theta)) + rate * r.dot(Vec2{-std::sin(theta), std::cos(theta)});
      double next = slope < 0.0 ? sigma - val / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) {
        next = 0.5 * (lo + hi);
      }
      if (hi - lo < 1e-15 * std::max(1.0, len)) {
        break;
      }
      sigma = next;
    }
    const double theta = th0 + rate * sigma;
    const Vec2 r = p - (a + e * sigma);
    consider(arclength_[i] + sigma, r.dot(Vec2{-std::sin(theta), std::cos(theta)}));
  }

  // Feet beyond either end, along the end tangents.
  {
    const Vec2 t = unit(heading_.front());
    const Vec2 r = p - points_.front();
    const double s = r.dot(t);
    if (s < 0.0 && -s <= extrapolation_tolerance_) {
      consider(s, r.cross(t) * -1.0);
    }
  }
  {
    const Vec2 t = unit(heading_.back());
    const Vec2 r = p - points_.back();
    const double s = r.dot(t);
    if (s > 0.0 && s <= extrapolation_tolerance_) {
      consider(length() + s, r.cross(t) * -1.0);
    }
  }

  if (!best) {
    throw PlanningError(ErrorCode::kOutOfDomain, "point projects outside the reference extent");
  }
  return *best;
}

Vec2 ReferencePath::to_cartesian(const FrenetPoint & fp) const
{
  if (fp.s < -extrapolation_tolerance_ || fp.s > length() + extrapolation_tolerance_) {
    throw PlanningError(ErrorCode::kOutOfDomain, "station outside the reference extent");
  }
  const double theta = heading_at(fp.s);
  return position_at(fp.s) + Vec2{-std::sin(theta), std::cos(theta)} * fp.d;
}

}  // namespace fcp
