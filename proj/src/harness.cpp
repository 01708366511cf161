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


#include "fcp/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "fcp/astar.hpp"
#include "fcp/geometry.hpp"

namespace fcp
{
namespace
{

constexpr double kYieldStep = 0.25;

ReferencePath scenario_reference(const Scenario & sc, const HarnessConfig & cfg)
{
  return ReferencePath::build(sc.reference, std::min(0.5, 0.5 * cfg.pipeline.weights.ds));
}

// Linear interpolation of a path sampled at uniform stations.
double sample(const std::vector<FrenetPoint> & path, const std::vector<double> & values, double s)
{
  if (path.size() < 2) {
    return values.empty() ? 0.0 : values.front();
  }
  const double ds = path[1].s - path[0].s;
  const double x = std::clamp((s - path.front().s) / ds, 0.0, static_cast<double>(path.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(x), path.size() - 2);
  const double t = x - static_cast<double>(i);
  return (1.0 - t) * values[i] + t * values[i + 1];
}

std::vector<Vec2> footprint(const Pose2 & pose, double length, double width)
{
  return oriented_box({pose.x, pose.y}, pose.yaw, 0.5 * length, 0.5 * width);
}

Pose2 world_pose(const ReferencePath & ref, const SpaceState & s)
{
  const auto p = ref.to_cartesian({s.s, s.d});
  return {p.x, p.y, wrap_angle(ref.heading_at(s.s) + s.phi)};
}

std::vector<RawObstacle> perceive(
  const std::vector<RawObstacle> & truth, const NoiseModel & noise, std::mt19937_64 & rng)
{
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<RawObstacle> out = truth;
  for (auto & o : out) {
    const double sp = o.noise_std.value_or(noise.position_std);
    const double nx = unit(rng);
    const double ny = unit(rng);
    const double nh = unit(rng);
    o.pose.x += sp * nx;
    o.pose.y += sp * ny;
    o.pose.yaw += noise.heading_std * nh;
  }
  return out;
}

struct FollowedPath
{
  std::vector<FrenetPoint> path;
  std::vector<double> d;
  std::vector<double> phi;
};

FollowedPath follow(std::vector<FrenetPoint> path, std::vector<double> phi)
{
  FollowedPath f;
  f.d.reserve(path.size());
  for (const auto & p : path) {
    f.d.push_back(p.d);
  }
  if (phi.size() != path.size()) {
    // Grid paths carry no heading; use the slope of each segment.
    phi.assign(path.size(), 0.0);
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      phi[k] = std::atan2(path[k + 1].d - path[k].d, path[k + 1].s - path[k].s);
    }
    if (path.size() > 1) {
      phi.back() = phi[path.size() - 2];
    }
  }
  f.path = std::move(path);
  f.phi = std::move(phi);
  return f;
}

// Whether driving the path at `speed` brings the ego into the predicted
// footprint of a moving obstacle within the look-ahead window.
bool conflicts(
  const ReferencePath & ref, const SpaceState & ego, const FollowedPath & fp, double speed,
  std::span<const RawObstacle> perceived, const HarnessConfig & cfg)
{
  const auto & pc = cfg.pipeline;
  for (double tau = 0.0; tau <= cfg.yield_lookahead + 1e-9; tau += kYieldStep) {
    const double s = ego.s + speed * tau;
    const SpaceState at{s, sample(fp.path, fp.d, s), sample(fp.path, fp.phi, s)};
    const auto ego_box = footprint(world_pose(ref, at), pc.ego_length, pc.ego_width);
    for (const auto & o : perceived) {
      if (!is_dynamic(o, pc.processor.dynamic_speed_threshold)) {
        continue;
      }
      const Pose2 moved{o.pose.x + o.velocity.x * tau, o.pose.y + o.velocity.y * tau, o.pose.yaw};
      const auto box = footprint(
        moved, o.length + 2.0 * pc.processor.margin_long, o.width + 2.0 * pc.processor.margin_lat);
      if (polygon_distance(ego_box, box) <= 0.0) {
        return true;
      }
    }
  }
  return false;
}

std::vector<Vec2> true_shape(const RawObstacle & o, double pedestrian_radius)
{
  if (o.kind == ObstacleKind::kPedestrian && (o.length <= 0.0 || o.width <= 0.0)) {
    return regular_polygon({o.pose.x, o.pose.y}, pedestrian_radius, 8);
  }
  return footprint(o.pose, o.length, o.width);
}

MetricSummary summarize(const std::vector<double> & v)
{
  MetricSummary m;
  if (v.empty()) {
    return m;
  }
  double sum = 0.0;
  for (double x : v) {
    sum += x;
  }
  m.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double sq = 0.0;
    for (double x : v) {
      sq += (x - m.mean) * (x - m.mean);
    }
    m.std = std::sqrt(sq / static_cast<double>(v.size() - 1));
  }
  return m;
}

}  // namespace

const char * to_string(PlannerKind kind)
{
  return kind == PlannerKind::kFcp ? "fcp" : "astar";
}

EpisodeLog run_episode(
  const Scenario & scenario, const HarnessConfig & cfg, PlannerKind kind, std::uint64_t seed)
{
  validate(scenario);
  EpisodeLog log;
  log.scenario = scenario.name;
  log.planner = kind;
  log.seed = seed;

  const auto ref = scenario_reference(scenario, cfg);
  Planner planner(ref, cfg.pipeline);
  std::mt19937_64 rng(seed);
  std::vector<RawObstacle> world = scenario.obstacles;
  SpaceState ego{scenario.ego.s, scenario.ego.d, scenario.ego.heading};
  const auto & pc = cfg.pipeline;
  const double horizon = (pc.weights.n - 1) * pc.weights.ds;

  for (int cycle = 0;; ++cycle) {
    const double t = cycle * cfg.cycle_period;
    if (t >= cfg.duration - 1e-9 || ego.s + horizon > ref.length()) {
      break;
    }
    const auto perceived = perceive(world, cfg.noise, rng);

    CycleRecord rec;
    rec.cycle = cycle;
    rec.time = t;
    rec.ego = ego;
    rec.ego_pose = world_pose(ref, ego);
    const auto ego_box = footprint(rec.ego_pose, pc.ego_length, pc.ego_width);
    for (const auto & o : world) {
      const double dist = polygon_distance(ego_box, true_shape(o, pc.processor.pedestrian_radius));
      rec.nearest_distance = std::min(rec.nearest_distance.value_or(dist), dist);
    }
    rec.collision = rec.nearest_distance && *rec.nearest_distance <= 0.0;
    const double lateral_extent = std::abs(0.5 * pc.ego_length * std::sin(ego.phi)) +
                                  std::abs(0.5 * pc.ego_width * std::cos(ego.phi));
    rec.bound_exit = ego.d - lateral_extent < pc.road_lb - 1e-9 ||
                     ego.d + lateral_extent > pc.road_ub + 1e-9;

    FollowedPath fp;
    try {
      if (kind == PlannerKind::kFcp) {
        auto res = planner.plan(ego, perceived);
        rec.corridor = res.input.corridor;
        rec.runtime = res.runtime;
        rec.status = res.solution.status;
        rec.cost = res.solution.cost;
        rec.iterations = res.solution.iterations;
        rec.max_violation = res.solution.max_violation;
        rec.alpha = res.solution.controls.alpha;
        if (res.solution.status == SolveStatus::kInfeasible) {
          throw PlanningError(ErrorCode::kInfeasible, "corridor violation beyond the slack limit");
        }
        fp = follow(res.solution.path, res.solution.phi);
      } else {
        const auto t0 = std::chrono::steady_clock::now();
        auto in = planner.build_corridor(ego, perceived);
        auto path = astar_baseline(in.corridor, ego, cfg.astar);
        rec.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rec.corridor = std::move(in.corridor);
        for (int k = 0; k < rec.corridor.n; ++k) {
          const double d = path[static_cast<std::size_t>(k)].d;
          rec.max_violation = std::max(
            {rec.max_violation, rec.corridor.d_lb[k] - d, d - rec.corridor.d_ub[k]});
        }
        fp = follow(std::move(path), {});
      }
    } catch (const PlanningError & e) {
      log.aborted = true;
      log.abort_cause = e.code();
      log.abort_message = e.what();
      log.cycles.push_back(std::move(rec));
      break;
    }

    rec.path = fp.path;
    rec.path_xy.reserve(fp.path.size());
    for (const auto & p : fp.path) {
      rec.path_xy.push_back(ref.to_cartesian(p));
    }
    rec.speed = cfg.ego_speed;
    if (conflicts(ref, ego, fp, cfg.ego_speed, perceived, cfg) &&
        !conflicts(ref, ego, fp, 0.0, perceived, cfg)) {
      rec.speed = 0.0;
    }
    const bool failed = rec.collision || rec.bound_exit;
    const double speed = rec.speed;
    log.cycles.push_back(std::move(rec));
    if (failed) {
      break;
    }

    const double s_next = ego.s + speed * cfg.cycle_period;
    if (speed > 0.0) {
      ego = {s_next, sample(fp.path, fp.d, s_next), sample(fp.path, fp.phi, s_next)};
    }
    for (auto & o : world) {
      o.pose.x += o.velocity.x * cfg.cycle_period;
      o.pose.y += o.velocity.y * cfg.cycle_period;
    }
  }
  return log;
}

CycleResult plan_once(const Scenario & scenario, const HarnessConfig & config, std::uint64_t seed)
{
  validate(scenario);
  const auto ref = scenario_reference(scenario, config);
  Planner planner(ref, config.pipeline);
  std::mt19937_64 rng(seed);
  const auto perceived = perceive(scenario.obstacles, config.noise, rng);
  return planner.plan({scenario.ego.s, scenario.ego.d, scenario.ego.heading}, perceived);
}

MetricsReport compute_metrics(const EpisodeLog & log)
{
  MetricsReport m;
  m.cycles = static_cast<int>(log.cycles.size());
  m.aborted = log.aborted;
  double runtime = 0.0;
  int planned = 0;
  double yaw_sum = 0.0;
  int yaw_count = 0;
  double dev_sum = 0.0;
  double dist_sum = 0.0;
  int dist_count = 0;
  for (const auto & rec : log.cycles) {
    m.collision = m.collision || rec.collision;
    m.bound_exit = m.bound_exit || rec.bound_exit;
    dev_sum += std::abs(rec.ego.d);
    if (rec.nearest_distance) {
      m.min_distance = std::min(m.min_distance.value_or(*rec.nearest_distance), *rec.nearest_distance);
      dist_sum += *rec.nearest_distance;
      ++dist_count;
    }
    if (rec.path_xy.empty()) {
      continue;
    }
    runtime += rec.runtime;
    ++planned;
    for (std::size_t i = 0; i + 2 < rec.path_xy.size(); ++i) {
      const auto a = rec.path_xy[i + 1] - rec.path_xy[i];
      const auto b = rec.path_xy[i + 2] - rec.path_xy[i + 1];
      const double dyaw = std::abs(wrap_angle(std::atan2(b.y, b.x) - std::atan2(a.y, a.x)));
      m.max_delta_yaw = std::max(m.max_delta_yaw, dyaw);
      yaw_sum += dyaw;
      ++yaw_count;
    }
  }
  if (planned > 0) {
    m.mean_runtime = runtime / planned;
  }
  if (yaw_count > 0) {
    m.mean_delta_yaw = yaw_sum / yaw_count;
  }
  if (!log.cycles.empty()) {
    m.mean_deviation = dev_sum / static_cast<double>(log.cycles.size());
  }
  if (dist_count > 0) {
    m.mean_distance = dist_sum / dist_count;
  }
  m.passed = !m.collision && !m.bound_exit && !m.aborted;
  return m;
}

std::uint64_t trial_seed(std::uint64_t master, int index)
{
  std::seed_seq seq{
    static_cast<std::uint32_t>(master & 0xffffffffu), static_cast<std::uint32_t>(master >> 32),
    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Scenario perturb_scenario(
  const Scenario & scenario, std::uint64_t seed, double longitudinal, double lateral, double yaw)
{
  Scenario out = scenario;
  const auto ref = ReferencePath::build(scenario.reference, 0.5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (auto & o : out.obstacles) {
    if (o.kind != ObstacleKind::kVehicle) {
      continue;
    }
    const double ds = longitudinal * unit(rng);
    const double dd = lateral * unit(rng);
    const double dyaw = yaw * unit(rng);
    double heading = 0.0;
    try {
      heading = ref.heading_at(ref.to_frenet({o.pose.x, o.pose.y}).s);
    } catch (const PlanningError &) {
      heading = ref.heading_at(0.0);
    }
    const Vec2 t{std::cos(heading), std::sin(heading)};
    const Vec2 nrm{-t.y, t.x};
    o.pose.x += ds * t.x + dd * nrm.x;
    o.pose.y += ds * t.y + dd * nrm.y;
    o.pose.yaw = wrap_angle(o.pose.yaw + dyaw);
  }
  return out;
}

MonteCarloReport monte_carlo(
  const Scenario & scenario, const HarnessConfig & config, PlannerKind planner, int trials,
  std::uint64_t seed, int threads)
{
  MonteCarloReport report;
  report.planner = planner;
  report.seed = seed;
  report.trials.resize(static_cast<std::size_t>(std::max(trials, 0)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      auto & tr = report.trials[static_cast<std::size_t>(i)];
      tr.trial = i;
      tr.seed = trial_seed(seed, i);
      const auto log = run_episode(perturb_scenario(scenario, tr.seed), config, planner, tr.seed);
      tr.metrics = compute_metrics(log);
      if (log.abort_cause) {
        tr.abort_cause = std::string(to_string(*log.abort_cause));
      }
    }
  };
  const int workers = std::clamp(threads, 1, std::max(trials, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(worker);
    }
  }

  std::vector<double> rt, my, ay, dev, md, ad;
  for (const auto & tr : report.trials) {
    const auto & m = tr.metrics;
    report.passed += m.passed ? 1 : 0;
    report.collisions += m.collision ? 1 : 0;
    report.bound_exits += m.bound_exit ? 1 : 0;
    report.aborted += m.aborted ? 1 : 0;
    rt.push_back(m.mean_runtime);
    my.push_back(m.max_delta_yaw);
    ay.push_back(m.mean_delta_yaw);
    dev.push_back(m.mean_deviation);
    if (m.min_distance) {
      md.push_back(*m.min_distance);
      ad.push_back(*m.mean_distance);
    }
  }
  report.mean_runtime = summarize(rt);
  report.max_delta_yaw = summarize(my);
  report.mean_delta_yaw = summarize(ay);
  report.mean_deviation = summarize(dev);
  report.min_distance = summarize(md);
  report.mean_distance = summarize(ad);
  return report;
}

BenchReport run_bench(
  const Scenario & scenario, const HarnessConfig & config, int runs, std::uint64_t seed)
{
  BenchReport report;
  const auto ref = scenario_reference(scenario, config);
  const auto & w = config.pipeline.weights;
  const double horizon = (w.n - 1) * w.ds;
  const double s_max = std::max(0.0, ref.length() - horizon - 1.0);
  const auto [l_lb, l_ub] = centroid_limits(config.pipeline);
  int draw = 0;
  while (static_cast<int>(report.solve_times.size()) < runs) {
    const auto draw_seed = trial_seed(seed, draw++);
    std::mt19937_64 rng(draw_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto sc = perturb_scenario(scenario, draw_seed);
    const SpaceState ego{
      s_max * unit(rng), std::clamp(-0.5 + unit(rng), l_lb, l_ub), 0.1 * (unit(rng) - 0.5)};
    Planner planner(ref, config.pipeline);
    try {
      const auto res = planner.plan(ego, sc.obstacles);
      report.solve_times.push_back(res.solution.solve_time);
      report.pipeline_times.push_back(res.runtime);
    } catch (const PlanningError & e) {
      if (e.code() != ErrorCode::kBlocked && e.code() != ErrorCode::kEmptyActuationSet) {
        throw;
      }
      ++report.rejected;
    }
    if (draw > 100 * std::max(runs, 1)) {
      break;
    }
  }
  for (double t : report.solve_times) {
    report.mean += t;
    report.max = std::max(report.max, t);
  }
  if (!report.solve_times.empty()) {
    report.mean /= static_cast<double>(report.solve_times.size());
  }
  return report;
}

std::vector<std::pair<double, int>> histogram(const std::vector<double> & samples, int bins)
{
  std::vector<std::pair<double, int>> out;
  if (samples.empty() || bins <= 0) {
    return out;
  }
  const double hi = *std::max_element(samples.begin(), samples.end());
  const double width = hi > 0.0 ? hi / bins : 1.0;
  for (int b = 0; b < bins; ++b) {
    out.emplace_back(b * width, 0);
  }
  for (double x : samples) {
    const int b = std::min(bins - 1, static_cast<int>(x / width));
    ++out[static_cast<std::size_t>(b)].second;
  }
  return out;
}

}  // namespace fcp
