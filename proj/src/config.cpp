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


#include "fcp/config.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "fcp/errors.hpp"

namespace fcp
{
namespace
{

double parse_double(std::string_view key, std::string_view text)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PlanningError(ErrorCode::kConfig, "bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text)
{
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PlanningError(ErrorCode::kConfig, "bad integer '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
  if (text == "true" || text == "1") {
    return true;
  }
  if (text == "false" || text == "0") {
    return false;
  }
  throw PlanningError(ErrorCode::kConfig, "bad flag '" + std::string(text) + "' for " + std::string(key));
}

using Setter = std::function<void(HarnessConfig &, std::string_view, std::string_view)>;

Setter real(double HarnessConfig::*field)
{
  return [field](HarnessConfig & c, std::string_view k, std::string_view v) { c.*field = parse_double(k, v); };
}

template <class F>
Setter real(F && member)
{
  return [member](HarnessConfig & c, std::string_view k, std::string_view v) { member(c) = parse_double(k, v); };
}

const std::map<std::string, Setter, std::less<>> & setters()
{
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    auto w = [](HarnessConfig & c) -> PlannerWeights & { return c.pipeline.weights; };
    t["ds"] = real([w](HarnessConfig & c) -> double & { return w(c).ds; });
    t["q_d"] = real([w](HarnessConfig & c) -> double & { return w(c).q_d; });
    t["q_u"] = real([w](HarnessConfig & c) -> double & { return w(c).q_u; });
    t["lambda_curve"] = real([w](HarnessConfig & c) -> double & { return w(c).lambda_curve; });
    t["lambda_risk"] = real([w](HarnessConfig & c) -> double & { return w(c).lambda_risk; });
    t["lambda_dyn"] = real([w](HarnessConfig & c) -> double & { return w(c).lambda_dyn; });
    t["lambda_alpha"] = real([w](HarnessConfig & c) -> double & { return w(c).lambda_alpha; });
    t["alpha_max"] = real([w](HarnessConfig & c) -> double & { return w(c).alpha_max; });
    t["l_f"] = real([w](HarnessConfig & c) -> double & { return w(c).l_f; });
    t["l_r"] = real([w](HarnessConfig & c) -> double & { return w(c).l_r; });
    t["delta_min"] = real([w](HarnessConfig & c) -> double & { return w(c).delta_min; });
    t["delta_max"] = real([w](HarnessConfig & c) -> double & { return w(c).delta_max; });
    t["eps_guard"] = real([w](HarnessConfig & c) -> double & { return w(c).eps_guard; });
    t["eps_dyn"] = real([w](HarnessConfig & c) -> double & { return w(c).eps_dyn; });
    t["tolerance"] = real([w](HarnessConfig & c) -> double & { return w(c).tolerance; });
    t["n"] = [](HarnessConfig & c, std::string_view k, std::string_view v) {
      c.pipeline.weights.n = parse_int(k, v);
    };
    t["max_iterations"] = [](HarnessConfig & c, std::string_view k, std::string_view v) {
      c.pipeline.weights.max_iterations = parse_int(k, v);
    };

    t["margin_long"] = real([](HarnessConfig & c) -> double & { return c.pipeline.processor.margin_long; });
    t["margin_lat"] = real([](HarnessConfig & c) -> double & { return c.pipeline.processor.margin_lat; });
    t["dbscan_eps"] = real([](HarnessConfig & c) -> double & { return c.pipeline.processor.dbscan_eps; });
    t["pedestrian_radius"] =
      real([](HarnessConfig & c) -> double & { return c.pipeline.processor.pedestrian_radius; });
    t["sample_spacing"] = real([](HarnessConfig & c) -> double & { return c.pipeline.processor.sample_spacing; });
    t["prediction_horizon"] =
      real([](HarnessConfig & c) -> double & { return c.pipeline.processor.prediction.horizon; });
    t["dbscan_min_pts"] = [](HarnessConfig & c, std::string_view k, std::string_view v) {
      c.pipeline.processor.dbscan_min_pts = parse_int(k, v);
    };
    t["clearance"] = real([](HarnessConfig & c) -> double & { return c.pipeline.governor.clearance; });
    t["hysteresis"] = real([](HarnessConfig & c) -> double & { return c.pipeline.governor.hysteresis; });
    t["risk_mode"] = [](HarnessConfig & c, std::string_view k, std::string_view v) {
      c.pipeline.governor.risk_mode = parse_bool(k, v);
    };
    t["astar_resolution"] = real([](HarnessConfig & c) -> double & { return c.astar.resolution; });
    t["astar_deviation_weight"] = real([](HarnessConfig & c) -> double & { return c.astar.deviation_weight; });
    t["noise_position_std"] = real([](HarnessConfig & c) -> double & { return c.noise.position_std; });
    t["noise_heading_std"] = real([](HarnessConfig & c) -> double & { return c.noise.heading_std; });
    t["cycle_period"] = real(&HarnessConfig::cycle_period);
    t["duration"] = real(&HarnessConfig::duration);
    t["ego_speed"] = real(&HarnessConfig::ego_speed);
    t["yield_lookahead"] = real(&HarnessConfig::yield_lookahead);
    return t;
  }();
  return table;
}

}  // namespace

void apply_override(HarnessConfig & config, std::string_view key, std::string_view value)
{
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw PlanningError(ErrorCode::kConfig, "unknown override key '" + std::string(key) + "'");
  }
  it->second(config, key, value);
}

std::pair<std::string, std::string> split_override(std::string_view assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw PlanningError(ErrorCode::kConfig, "override must look like key=value: " + std::string(assignment));
  }
  return {std::string(assignment.substr(0, eq)), std::string(assignment.substr(eq + 1))};
}

HarnessConfig make_config(
  const Scenario & scenario, std::span<const std::pair<std::string, std::string>> overrides)
{
  HarnessConfig c;
  c.pipeline.road_lb = scenario.road_lb;
  c.pipeline.road_ub = scenario.road_ub;
  c.pipeline.ego_length = scenario.ego.length;
  c.pipeline.ego_width = scenario.ego.width;
  c.noise = scenario.noise;
  c.cycle_period = scenario.cycle_period;
  c.duration = scenario.duration;
  c.ego_speed = scenario.ego.speed;
  for (const auto & [k, v] : scenario.overrides) {
    apply_override(c, k, v);
  }
  for (const auto & [k, v] : overrides) {
    apply_override(c, k, v);
  }
  c.pipeline.weights.validate();
  if (!(c.cycle_period > 0.0) || !(c.duration > 0.0) || c.ego_speed < 0.0 ||
      !(c.astar.resolution > 0.0) || c.noise.position_std < 0.0 || c.noise.heading_std < 0.0) {
    throw PlanningError(ErrorCode::kConfig, "harness knobs out of range");
  }
  return c;
}

}  // namespace fcp
