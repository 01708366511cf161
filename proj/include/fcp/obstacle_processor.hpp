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

#include "fcp/geometry.hpp"
#include "fcp/reference_path.hpp"

namespace fcp
{

enum class ObstacleKind { kVehicle, kPedestrian };

struct Pose2
{
  double x{0.0};
  double y{0.0};
  double yaw{0.0};
};

struct RawObstacle
{
  int id{0};
  ObstacleKind kind{ObstacleKind::kVehicle};
  Pose2 pose;
  double length{0.0};
  double width{0.0};
  Vec2 velocity;
  // Forces dynamic handling regardless of speed.
  bool flagged_dynamic{false};
  // Per-obstacle perception noise, overriding the scenario default.
  std::optional<double> noise_std;
};

// Lateral predictions per planning station; nullopt where the prediction
// never reaches the station.
using LateralPrediction = std::vector<std::optional<double>>;

struct ObstaclePolygon
{
  int id{0};
  // Counterclockwise in the (s, d) plane.
  std::vector<FrenetPoint> vertices;
  std::vector<FrenetPoint> edge_samples;
  bool is_dynamic{false};
  // Present iff is_dynamic.
  LateralPrediction predicted_d;

  double min_s() const;
  double max_s() const;
  double min_d() const;
  double max_d() const;
};

struct ObstacleSet
{
  std::vector<ObstaclePolygon> all;
  int dynamic_count{0};
};

struct ClusterResult
{
  // Indices into the clustered input, each cluster sorted by (s, d).
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> noise;
};

struct PredictionOptions
{
  double horizon{5.0};
  double dt{0.05};
};

struct ProcessorConfig
{
  double margin_long{0.5};
  double margin_lat{0.3};
  double dbscan_eps{1.5};
  int dbscan_min_pts{2};
  double pedestrian_radius{0.3};
  double sample_spacing{0.25};
  double dynamic_speed_threshold{0.1};
  PredictionOptions prediction;
};

bool is_dynamic(const RawObstacle & o, double speed_threshold);

/// Safety-augmented box: the footprint grown by the margins on each side,
/// sampled in Cartesian space and convexified after the Frenet transform.
ObstaclePolygon inflate_vehicle(
  const RawObstacle & o, double margin_long, double margin_lat, const ReferencePath & ref,
  double sample_spacing = 0.25);

/// DBSCAN over Frenet positions. Points are visited in (s, d) order so that
/// membership does not depend on input order.
ClusterResult cluster_pedestrians(std::span<const FrenetPoint> positions, double eps, int min_pts);

/// Convex hull of Frenet points. One or two distinct points are padded with
/// octagons of circumradius `pad_radius`.
ObstaclePolygon convex_hull(
  std::span<const FrenetPoint> points, double pad_radius = 0.3, double sample_spacing = 0.25);

/// Constant-velocity prediction of the obstacle centre, sampled where its
/// station crosses s0 + k * ds for k = 0..n-1.
LateralPrediction predict_dynamic(
  const RawObstacle & o, int n, double ds, double s0, const ReferencePath & ref,
  const PredictionOptions & options = {});

/// Full Data Processor pass. Static polygons are additionally grown by the
/// ego half-extents so that corridor bounds refer to the ego centroid.
/// Obstacles that do not project onto the reference are dropped.
ObstacleSet process_obstacles(
  std::span<const RawObstacle> obstacles, const ReferencePath & ref, const ProcessorConfig & config,
  double s0, int n, double ds, double ego_half_length, double ego_half_width);

}  // namespace fcp
