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

#include <gtest/gtest.h>

#include "fcp/errors.hpp"
#include "fcp/scenario.hpp"

namespace
{

fcp::ErrorCode code_of(auto && fn)
{
  try {
    fn();
  } catch (const fcp::PlanningError & e) {
    return e.code();
  }
  ADD_FAILURE() << "no PlanningError";
  return fcp::ErrorCode::kDomainError;
}

const char * kMinimal = R"({
  "name": "mini",
  "reference": [[0, 0], [100, 0]],
  "road": {"lower": -3.0, "upper": 4.0},
  "ego": {"s": 2.0, "d": 0.5, "speed": 5.0},
  "obstacles": [
    {"id": 3, "kind": "vehicle", "pose": [30, 1, 0.1], "size": [4, 2], "velocity": [1, 0], "dynamic": true},
    {"id": 4, "kind": "pedestrian", "pose": [50, -2], "noise_std": 0.2}
  ],
  "planner": {"q_u": 3, "risk_mode": true}
})";

}  // namespace

TEST(Scenario, ParsesFields)
{
  const auto sc = fcp::parse_scenario(kMinimal);
  EXPECT_EQ(sc.name, "mini");
  ASSERT_EQ(sc.reference.size(), 2u);
  EXPECT_EQ(sc.road_lb, -3.0);
  EXPECT_EQ(sc.road_ub, 4.0);
  EXPECT_EQ(sc.ego.s, 2.0);
  EXPECT_EQ(sc.ego.speed, 5.0);
  EXPECT_EQ(sc.ego.length, 4.5);
  ASSERT_EQ(sc.obstacles.size(), 2u);
  EXPECT_EQ(sc.obstacles[0].kind, fcp::ObstacleKind::kVehicle);
  EXPECT_TRUE(sc.obstacles[0].flagged_dynamic);
  EXPECT_EQ(sc.obstacles[0].pose.yaw, 0.1);
  EXPECT_EQ(sc.obstacles[0].velocity.x, 1.0);
  EXPECT_EQ(sc.obstacles[1].kind, fcp::ObstacleKind::kPedestrian);
  ASSERT_TRUE(sc.obstacles[1].noise_std.has_value());
  EXPECT_EQ(*sc.obstacles[1].noise_std, 0.2);
  EXPECT_EQ(sc.overrides.size(), 2u);
}

TEST(Scenario, RejectsMalformedInput)
{
  EXPECT_EQ(code_of([] { fcp::parse_scenario("{"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([] { fcp::parse_scenario(R"({"name": "x"})"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(
    code_of([] { fcp::parse_scenario(R"({"reference": [[0,0],[9,0]], "road": {"lower": 2, "upper": 1}})"); }),
    fcp::ErrorCode::kConfig);
  EXPECT_EQ(
    code_of([] {
      fcp::parse_scenario(R"({"reference": [[0,0],[9,0]], "obstacles": [{"id": 1, "kind": "cow", "pose": [1,1]}]})");
    }),
    fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([] { fcp::load_scenario("/nonexistent/file.json"); }), fcp::ErrorCode::kConfig);
}

TEST(Scenario, ShippedScenariosLoad)
{
  for (const char * name : {"motivating", "empty", "curved", "pedestrians"}) {
    const auto sc = fcp::load_scenario(std::string(FCP_SCENARIO_DIR) + "/" + name + ".json");
    EXPECT_EQ(sc.name, name);
    EXPECT_NO_THROW(fcp::make_config(sc));
  }
}

TEST(Config, OverridesApplyInOrder)
{
  const auto sc = fcp::parse_scenario(kMinimal);
  const std::vector<std::pair<std::string, std::string>> cli{{"q_u", "7.5"}, {"n", "40"}};
  const auto cfg = fcp::make_config(sc, cli);
  EXPECT_EQ(cfg.pipeline.weights.q_u, 7.5);
  EXPECT_EQ(cfg.pipeline.weights.n, 40);
  EXPECT_TRUE(cfg.pipeline.governor.risk_mode);
  EXPECT_EQ(cfg.pipeline.road_lb, -3.0);
  EXPECT_EQ(cfg.ego_speed, 5.0);
  EXPECT_EQ(fcp::make_config(sc).pipeline.weights.q_u, 3.0);
}

TEST(Config, EveryKnobIsSettable)
{
  fcp::HarnessConfig cfg;
  fcp::apply_override(cfg, "lambda_dyn", "2");
  fcp::apply_override(cfg, "margin_lat", "0.4");
  fcp::apply_override(cfg, "dbscan_min_pts", "3");
  fcp::apply_override(cfg, "astar_resolution", "0.5");
  fcp::apply_override(cfg, "yield_lookahead", "1.5");
  fcp::apply_override(cfg, "noise_position_std", "0");
  EXPECT_EQ(cfg.pipeline.weights.lambda_dyn, 2.0);
  EXPECT_EQ(cfg.pipeline.processor.margin_lat, 0.4);
  EXPECT_EQ(cfg.pipeline.processor.dbscan_min_pts, 3);
  EXPECT_EQ(cfg.astar.resolution, 0.5);
  EXPECT_EQ(cfg.yield_lookahead, 1.5);
  EXPECT_EQ(cfg.noise.position_std, 0.0);
}

TEST(Config, RejectsBadOverrides)
{
  fcp::HarnessConfig cfg;
  EXPECT_EQ(code_of([&] { fcp::apply_override(cfg, "warp_speed", "9"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([&] { fcp::apply_override(cfg, "q_d", "abc"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([&] { fcp::apply_override(cfg, "n", "4.5"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([&] { fcp::apply_override(cfg, "risk_mode", "maybe"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([] { fcp::split_override("novalue"); }), fcp::ErrorCode::kConfig);
  EXPECT_EQ(code_of([] { fcp::split_override("=3"); }), fcp::ErrorCode::kConfig);
  const auto [k, v] = fcp::split_override("q_d=0.5");
  EXPECT_EQ(k, "q_d");
  EXPECT_EQ(v, "0.5");

  const auto sc = fcp::parse_scenario(kMinimal);
  const std::vector<std::pair<std::string, std::string>> bad{{"q_d", "-1"}};
  EXPECT_EQ(code_of([&] { fcp::make_config(sc, bad); }), fcp::ErrorCode::kConfig);
  const std::vector<std::pair<std::string, std::string>> period{{"cycle_period", "0"}};
  EXPECT_EQ(code_of([&] { fcp::make_config(sc, period); }), fcp::ErrorCode::kConfig);
}
