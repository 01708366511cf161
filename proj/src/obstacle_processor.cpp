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

#include "fcp/obstacle_processor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "fcp/errors.hpp"

namespace fcp
{
namespace
{

constexpr int kOctagonSides = 8;

Vec2 as_vec(const FrenetPoint & p) { return {p.s, p.d}; }
FrenetPoint as_frenet(const Vec2 & v) { return {v.x, v.y}; }

ObstaclePolygon polygon_from_hull(const std::vector<Vec2> & hull, double sample_spacing)
{
  ObstaclePolygon poly;
  poly.vertices.reserve(hull.size());
  for (const auto & v : hull) {
    poly.vertices.push_back(as_frenet(v));
  }
  for (const auto & v : sample_edges(hull, sample_spacing)) {
    poly.edge_samples.push_back(as_frenet(v));
  }
  return poly;
}

// Hull of the Minkowski sum of the points with the given convex shapes.
std::vector<Vec2> padded_hull(std::span<const Vec2> points, std::span<const Vec2> shape)
{
  std::vector<Vec2> cloud;
  cloud.reserve(points.size() * shape.size());
  for (const auto & p : points) {
    for (const auto & q : shape) {
      cloud.push_back(p + q);
    }
  }
  return fcp::convex_hull(std::move(cloud));
}

std::vector<Vec2> octagon(double radius) { return regular_polygon({0.0, 0.0}, radius, kOctagonSides); }

}  // namespace

double ObstaclePolygon::min_s() const
{
  double v = std::numeric_limits<double>::infinity();
  for (const auto & p : vertices) v = std::min(v, p.s);
  return v;
}

double ObstaclePolygon::max_s() const
{
  double v = -std::numeric_limits<double>::infinity();
  for (const auto & p : vertices) v = std::max(v, p.s);
  return v;
}

double ObstaclePolygon::min_d() const
{
  double v = std::numeric_limits<double>::infinity();
  for (const auto & p : vertices) v = std::min(v, p.d);
  return v;
}

double ObstaclePolygon::max_d() const
{
  double v = -std::numeric_limits<double>::infinity();
  for (const auto & p : vertices) v = std::max(v, p.d);
  return v;
}

bool is_dynamic(const RawObstacle & o, double speed_threshold)
{
  return o.flagged_dynamic || o.velocity.norm() > speed_threshold;
}

ObstaclePolygon inflate_vehicle(
  const RawObstacle & o, double margin_long, double margin_lat, const ReferencePath & ref,
  double sample_spacing)
{
  if (o.kind != ObstacleKind::kVehicle) {
    throw PlanningError(ErrorCode::kDomainError, "inflate_vehicle expects a vehicle");
  }
  const auto box = oriented_box(
    {o.pose.x, o.pose.y}, o.pose.yaw, 0.5 * o.length + margin_long, 0.5 * o.width + margin_lat);
  // Curvature of the reference bends straight edges in Frenet space; the
  // hull of densely sampled edges over-approximates the warped box.
  std::vector<Vec2> frenet;
  for (const auto & p : sample_edges(box, sample_spacing)) {
    frenet.push_back(as_vec(ref.to_frenet(p)));
  }
  auto poly = polygon_from_hull(fcp::convex_hull(std::move(frenet)), sample_spacing);
  poly.id = o.id;
  return poly;
}

ClusterResult cluster_pedestrians(std::span<const FrenetPoint> positions, double eps, int min_pts)
{
  const auto n = positions.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto & pa = positions[a];
    const auto & pb = positions[b];
    if (pa.s != pb.s) return pa.s < pb.s;
    if (pa.d != pb.d) return pa.d < pb.d;
    return a < b;
  });

  // Neighbourhoods in canonical order; brute force is fine at crowd sizes.
  std::vector<std::vector<std::size_t>> neighbours(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto & a = positions[order[i]];
      const auto & b = positions[order[j]];
      if (std::hypot(a.s - b.s, a.d - b.d) <= eps) {
        neighbours[i].push_back(j);
      }
    }
  }
  auto is_core = [&](std::size_t i) {
    return static_cast<int>(neighbours[i].size()) >= min_pts;
  };

  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  int cluster_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) {
      continue;
    }
    if (!is_core(i)) {
      label[i] = kNoise;
      continue;
    }
    const int id = cluster_count++;
    label[i] = id;
    std::deque<std::size_t> frontier(neighbours[i].begin(), neighbours[i].end());
    while (!frontier.empty()) {
      const auto j = frontier.front();
      frontier.pop_front();
      if (label[j] == kNoise) {
        label[j] = id;
      }
      if (label[j] != kUnvisited) {
        continue;
      }
      label[j] = id;
      if (is_core(j)) {
        frontier.insert(frontier.end(), neighbours[j].begin(), neighbours[j].end());
      }
    }
  }

  ClusterResult result;
  result.clusters.resize(static_cast<std::size_t>(cluster_count));
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == kNoise) {
      result.noise.push_back(order[i]);
    } else {
      result.clusters[static_cast<std::size_t>(label[i])].push_back(order[i]);
    }
  }
  return result;
}

ObstaclePolygon convex_hull(
  std::span<const FrenetPoint> points, double pad_radius, double sample_spacing)
{
  std::vector<Vec2> cloud;
  cloud.reserve(points.size());
  for (const auto & p : points) {
    cloud.push_back(as_vec(p));
  }
  auto hull = fcp::convex_hull(cloud);
  if (hull.size() < 3) {
    hull = padded_hull(hull, octagon(pad_radius));
  }
  return polygon_from_hull(hull, sample_spacing);
}

LateralPrediction predict_dynamic(
  const RawObstacle & o, int n, double ds, double s0, const ReferencePath & ref,
  const PredictionOptions & options)
{
  LateralPrediction out(static_cast<std::size_t>(std::max(n, 0)));
  if (n <= 0) {
    return out;
  }
  const Vec2 start{o.pose.x, o.pose.y};

  if (o.velocity.norm() < 1e-9) {
    const auto fp = ref.to_frenet(start);
    const auto k = static_cast<long>(std::lround((fp.s - s0) / ds));
    if (k >= 0 && k < n) {
      out[static_cast<std::size_t>(k)] = fp.d;
    }
    return out;
  }

  std::optional<FrenetPoint> prev;
  const int samples = static_cast<int>(std::ceil(options.horizon / options.dt - 1e-9));
  for (int j = 0; j <= samples; ++j) {
    const double t = std::min(j * options.dt, options.horizon);
    FrenetPoint cur;
    try {
      cur = ref.to_frenet(start + o.velocity * t);
    } catch (const PlanningError &) {
      break;
    }
    if (!prev) {
      const double k_real = (cur.s - s0) / ds;
      const auto k = static_cast<long>(std::lround(k_real));
      if (k >= 0 && k < n && std::abs(k_real - static_cast<double>(k)) < 1e-12) {
        out[static_cast<std::size_t>(k)] = cur.d;
      }
      prev = cur;
      continue;
    }
    const double lo = std::min(prev->s, cur.s);
    const double hi = std::max(prev->s, cur.s);
    if (hi > lo) {
      const auto k_first = std::max<long>(0, static_cast<long>(std::ceil((lo - s0) / ds)));
      const auto k_last = std::min<long>(n - 1, static_cast<long>(std::floor((hi - s0) / ds)));
      for (long k = k_first; k <= k_last; ++k) {
        auto & slot = out[static_cast<std::size_t>(k)];
        if (!slot) {
          const double station = s0 + static_cast<double>(k) * ds;
          const double w = (station - prev->s) / (cur.s - prev->s);
          slot = prev->d + (cur.d - prev->d) * w;
        }
      }
    }
    prev = cur;
  }
  return out;
}

ObstacleSet process_obstacles(
  std::span<const RawObstacle> obstacles, const ReferencePath & ref, const ProcessorConfig & config,
  double s0, int n, double ds, double ego_half_length, double ego_half_width)
{
  ObstacleSet set;
  std::vector<FrenetPoint> ped_positions;
  std::vector<int> ped_ids;

  for (const auto & o : obstacles) {
    try {
      const bool dynamic = is_dynamic(o, config.dynamic_speed_threshold);
      if (o.kind == ObstacleKind::kPedestrian && !dynamic) {
        ped_positions.push_back(ref.to_frenet({o.pose.x, o.pose.y}));
        ped_ids.push_back(o.id);
        continue;
      }
      ObstaclePolygon poly;
      if (o.kind == ObstacleKind::kVehicle) {
        const double long_margin = config.margin_long + (dynamic ? 0.0 : ego_half_length);
        const double lat_margin = config.margin_lat + (dynamic ? 0.0 : ego_half_width);
        poly = inflate_vehicle(o, long_margin, lat_margin, ref, config.sample_spacing);
      } else {
        const FrenetPoint c = ref.to_frenet({o.pose.x, o.pose.y});
        poly = convex_hull(std::span<const FrenetPoint>(&c, 1), config.pedestrian_radius,
                           config.sample_spacing);
        poly.id = o.id;
      }
      if (dynamic) {
        poly.is_dynamic = true;
        poly.predicted_d = predict_dynamic(o, n, ds, s0, ref, config.prediction);
        ++set.dynamic_count;
      }
      set.all.push_back(std::move(poly));
    } catch (const PlanningError & e) {
      if (e.code() != ErrorCode::kOutOfDomain) {
        throw;
      }
    }
  }

  if (!ped_positions.empty()) {
    // Each pedestrian becomes an octagon, grown by the ego extents and the
    // safety margins; clusters take the hull of their members' shapes.
    std::vector<Vec2> shape;
    const double hl = ego_half_length + config.margin_long;
    const double hw = ego_half_width + config.margin_lat;
    const std::vector<Vec2> box{{-hl, -hw}, {hl, -hw}, {hl, hw}, {-hl, hw}};
    const auto oct = octagon(config.pedestrian_radius);
    for (const auto & b : box) {
      for (const auto & q : oct) {
        shape.push_back(b + q);
      }
    }
    shape = fcp::convex_hull(std::move(shape));

    auto emit = [&](const std::vector<std::size_t> & members) {
      std::vector<Vec2> pts;
      int id = std::numeric_limits<int>::max();
      for (auto i : members) {
        pts.push_back(as_vec(ped_positions[i]));
        id = std::min(id, ped_ids[i]);
      }
      auto poly = polygon_from_hull(padded_hull(pts, shape), config.sample_spacing);
      poly.id = id;
      set.all.push_back(std::move(poly));
    };
    const auto clusters =
      cluster_pedestrians(ped_positions, config.dbscan_eps, config.dbscan_min_pts);
    for (const auto & c : clusters.clusters) {
      emit(c);
    }
    for (auto i : clusters.noise) {
      emit({i});
    }
  }
  return set;
}

}  // namespace fcp
