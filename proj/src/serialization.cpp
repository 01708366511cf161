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


#include "fcp/serialization.hpp"

#include <cmath>
#include <sstream>

namespace fcp
{
namespace
{

using nlohmann::json;

json optional_number(const std::optional<double> & v)
{
  return v ? json(*v) : json(nullptr);
}

json summary(const MetricSummary & m)
{
  return {{"mean", m.mean}, {"std", m.std}};
}

}  // namespace

json to_json(const Corridor & corridor)
{
  json rows = json::array();
  for (int k = 0; k < corridor.n; ++k) {
    rows.push_back(
      {{"k", k}, {"s", corridor.station(k)}, {"d_lb", corridor.d_lb[k]}, {"d_ub", corridor.d_ub[k]}});
  }
  return rows;
}

json to_json(const PlannerSolution & sol, const Corridor & corridor)
{
  json steps = json::array();
  for (std::size_t k = 0; k < sol.path.size(); ++k) {
    const bool last = k + 1 == sol.path.size();
    steps.push_back(
      {{"k", k},
       {"s", sol.path[k].s},
       {"d", sol.path[k].d},
       {"phi", sol.phi[k]},
       {"u", last ? json(nullptr) : json(sol.controls.u[k])},
       {"alpha", k == 0 ? 0.0 : sol.controls.alpha[k - 1]},
       {"d_lb", corridor.d_lb[k]},
       {"d_ub", corridor.d_ub[k]}});
  }
  return {
    {"steps", steps},
    {"diagnostics",
     {{"cost", sol.cost},
      {"iterations", sol.iterations},
      {"status", to_string(sol.status)},
      {"solve_time", sol.solve_time},
      {"max_violation", sol.max_violation}}}};
}

json to_json(const EpisodeLog & log)
{
  json cycles = json::array();
  for (const auto & rec : log.cycles) {
    json path = json::array();
    for (std::size_t k = 0; k < rec.path.size(); ++k) {
      path.push_back({rec.path[k].s, rec.path[k].d, rec.path_xy[k].x, rec.path_xy[k].y});
    }
    double sa = 0.0;
    for (double a : rec.alpha) {
      sa += a;
    }
    cycles.push_back(
      {{"cycle", rec.cycle},
       {"time", rec.time},
       {"ego", {{"s", rec.ego.s}, {"d", rec.ego.d}, {"phi", rec.ego.phi}}},
       {"pose", {rec.ego_pose.x, rec.ego_pose.y, rec.ego_pose.yaw}},
       {"speed", rec.speed},
       {"corridor", to_json(rec.corridor)},
       {"path", path},
       {"status", to_string(rec.status)},
       {"iterations", rec.iterations},
       {"cost", rec.cost},
       {"max_violation", rec.max_violation},
       {"alpha_sum", sa},
       {"nearest_distance", optional_number(rec.nearest_distance)},
       {"bound_exit", rec.bound_exit},
       {"collision", rec.collision}});
  }
  return {
    {"scenario", log.scenario},
    {"planner", to_string(log.planner)},
    {"seed", log.seed},
    {"aborted", log.aborted},
    {"abort_cause", log.abort_cause ? json(std::string(to_string(*log.abort_cause))) : json(nullptr)},
    {"cycles", cycles}};
}

json to_json(const MetricsReport & m)
{
  return {
    {"M_t", m.mean_runtime},
    {"M_my", m.max_delta_yaw},
    {"M_ay", m.mean_delta_yaw},
    {"M_l", m.mean_deviation},
    {"M_md", optional_number(m.min_distance)},
    {"M_ad", optional_number(m.mean_distance)},
    {"cycles", m.cycles},
    {"collision", m.collision},
    {"bound_exit", m.bound_exit},
    {"aborted", m.aborted},
    {"passed", m.passed}};
}

json aggregate_json(const MonteCarloReport & r)
{
  return {
    {"planner", to_string(r.planner)},
    {"seed", r.seed},
    {"trials", r.trials.size()},
    {"passed", r.passed},
    {"collisions", r.collisions},
    {"bound_exits", r.bound_exits},
    {"aborted", r.aborted},
    {"M_my", summary(r.max_delta_yaw)},
    {"M_ay", summary(r.mean_delta_yaw)},
    {"M_l", summary(r.mean_deviation)},
    {"M_md", summary(r.min_distance)},
    {"M_ad", summary(r.mean_distance)}};
}

std::string trials_csv(const MonteCarloReport & r)
{
  std::ostringstream os;
  os.precision(10);
  os << "trial,seed,M_my,M_ay,M_l,M_md,M_ad,collision,bound_exit,aborted,passed,abort_cause\n";
  for (const auto & t : r.trials) {
    const auto & m = t.metrics;
    os << t.trial << ',' << t.seed << ',' << m.max_delta_yaw << ',' << m.mean_delta_yaw << ','
       << m.mean_deviation << ',';
    if (m.min_distance) {
      os << *m.min_distance << ',' << *m.mean_distance;
    } else {
      os << ',';
    }
    os << ',' << m.collision << ',' << m.bound_exit << ',' << m.aborted << ',' << m.passed << ','
       << t.abort_cause << '\n';
  }
  return os.str();
}

std::string histogram_csv(const std::vector<std::pair<double, int>> & bins)
{
  std::ostringstream os;
  os.precision(10);
  os << "bin,count\n";
  for (const auto & [edge, count] : bins) {
    os << edge << ',' << count << '\n';
  }
  return os.str();
}

}  // namespace fcp
