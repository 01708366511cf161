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


#include "fcp/scenario.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fcp/errors.hpp"

namespace fcp
{
namespace
{

using nlohmann::json;

double number_or(const json & j, const char * key, double fallback)
{
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::string scalar_text(const json & v)
{
  if (v.is_boolean()) {
    return v.get<bool>() ? "true" : "false";
  }
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<long long>());
  }
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw PlanningError(ErrorCode::kConfig, "planner override values must be scalars");
}

RawObstacle parse_obstacle(const json & j)
{
  RawObstacle o;
  o.id = j.at("id").get<int>();
  const auto kind = j.value("kind", std::string("vehicle"));
  if (kind == "vehicle") {
    o.kind = ObstacleKind::kVehicle;
  } else if (kind == "pedestrian") {
    o.kind = ObstacleKind::kPedestrian;
  } else {
    throw PlanningError(ErrorCode::kConfig, "unknown obstacle kind '" + kind + "'");
  }
  const auto & pose = j.at("pose");
  o.pose = {pose.at(0).get<double>(), pose.at(1).get<double>(), pose.size() > 2 ? pose.at(2).get<double>() : 0.0};
  if (j.contains("size")) {
    o.length = j.at("size").at(0).get<double>();
    o.width = j.at("size").at(1).get<double>();
  } else if (o.kind == ObstacleKind::kVehicle) {
    o.length = 4.5;
    o.width = 1.8;
  }
  if (j.contains("velocity")) {
    o.velocity = {j.at("velocity").at(0).get<double>(), j.at("velocity").at(1).get<double>()};
  }
  o.flagged_dynamic = j.value("dynamic", false);
  if (j.contains("noise_std")) {
    o.noise_std = j.at("noise_std").get<double>();
  }
  return o;
}

}  // namespace

void validate(const Scenario & sc)
{
  if (sc.reference.size() < 2) {
    throw PlanningError(ErrorCode::kConfig, "reference needs at least two waypoints");
  }
  if (!(sc.road_lb < sc.road_ub)) {
    throw PlanningError(ErrorCode::kConfig, "road lower limit must be below the upper limit");
  }
  if (sc.ego.d - 0.5 * sc.ego.width < sc.road_lb || sc.ego.d + 0.5 * sc.ego.width > sc.road_ub) {
    throw PlanningError(ErrorCode::kConfig, "ego starts outside the road limits");
  }
  if (!(sc.cycle_period > 0.0) || !(sc.duration > 0.0)) {
    throw PlanningError(ErrorCode::kConfig, "cycle period and duration must be positive");
  }
  if (!(sc.ego.length > 0.0) || !(sc.ego.width > 0.0) || sc.ego.speed < 0.0) {
    throw PlanningError(ErrorCode::kConfig, "bad ego dimensions or speed");
  }
}

Scenario parse_scenario(const std::string & text)
{
  Scenario sc;
  try {
    const json j = json::parse(text);
    sc.name = j.value("name", std::string("unnamed"));
    for (const auto & p : j.at("reference")) {
      sc.reference.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    if (j.contains("road")) {
      sc.road_lb = number_or(j.at("road"), "lower", sc.road_lb);
      sc.road_ub = number_or(j.at("road"), "upper", sc.road_ub);
    }
    if (j.contains("ego")) {
      const auto & e = j.at("ego");
      sc.ego.s = number_or(e, "s", sc.ego.s);
      sc.ego.d = number_or(e, "d", sc.ego.d);
      sc.ego.heading = number_or(e, "heading", sc.ego.heading);
      sc.ego.speed = number_or(e, "speed", sc.ego.speed);
      sc.ego.length = number_or(e, "length", sc.ego.length);
      sc.ego.width = number_or(e, "width", sc.ego.width);
    }
    if (j.contains("obstacles")) {
      for (const auto & o : j.at("obstacles")) {
        sc.obstacles.push_back(parse_obstacle(o));
      }
    }
    if (j.contains("noise")) {
      sc.noise.position_std = number_or(j.at("noise"), "position_std", sc.noise.position_std);
      sc.noise.heading_std = number_or(j.at("noise"), "heading_std", sc.noise.heading_std);
    }
    sc.cycle_period = number_or(j, "cycle_period", sc.cycle_period);
    sc.duration = number_or(j, "duration", sc.duration);
    if (j.contains("planner")) {
      for (const auto & [key, value] : j.at("planner").items()) {
        sc.overrides.emplace_back(key, scalar_text(value));
      }
    }
  } catch (const json::exception & e) {
    throw PlanningError(ErrorCode::kConfig, std::string("scenario: ") + e.what());
  }
  validate(sc);
  return sc;
}

Scenario load_scenario(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw PlanningError(ErrorCode::kConfig, "cannot open scenario " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace fcp
