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


#include "fcp/boundary_generator.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "fcp/errors.hpp"

using fcp::FrenetPoint;
using fcp::ObstaclePolygon;

namespace
{

ObstaclePolygon box(double s0, double s1, double d0, double d1, double spacing = 0.25)
{
  ObstaclePolygon p;
  p.vertices = {{s0, d0}, {s1, d0}, {s1, d1}, {s0, d1}};
  std::vector<fcp::Vec2> v{{s0, d0}, {s1, d0}, {s1, d1}, {s0, d1}};
  for (const auto & q : fcp::sample_edges(v, spacing)) {
    p.edge_samples.push_back({q.x, q.y});
  }
  return p;
}

// Per-cell scan: a point constrains its own cell and the one after it.
fcp::Corridor oracle(
  const std::vector<ObstaclePolygon> & lb, const std::vector<ObstaclePolygon> & ub, double l_lb,
  double l_ub, int n, double ds, double s0)
{
  fcp::Corridor c;
  c.n = n;
  c.d_lb.assign(n, l_lb);
  c.d_ub.assign(n, l_ub);
  for (int k = 0; k < n; ++k) {
    for (const auto & o : lb) {
      for (const auto & p : o.edge_samples) {
        const double cell = std::floor((p.s - s0) / ds);
        if (cell == k || (cell == k - 1 && k - 1 >= 0)) {
          c.d_lb[k] = std::max(c.d_lb[k], p.d);
        }
      }
    }
    for (const auto & o : ub) {
      for (const auto & p : o.edge_samples) {
        const double cell = std::floor((p.s - s0) / ds);
        if (cell == k || (cell == k - 1 && k - 1 >= 0)) {
          c.d_ub[k] = std::min(c.d_ub[k], p.d);
        }
      }
    }
  }
  return c;
}

std::vector<ObstaclePolygon> random_set(std::mt19937 & rng, int count, double s_lo, double s_hi)
{
  std::uniform_real_distribution<double> us(s_lo, s_hi);
  std::uniform_real_distribution<double> ud(-4.0, 4.0);
  std::uniform_real_distribution<double> ul(0.3, 6.0);
  std::vector<ObstaclePolygon> out;
  for (int i = 0; i < count; ++i) {
    const double s = us(rng);
    const double d = ud(rng);
    out.push_back(box(s, s + ul(rng), d, d + 0.5 * ul(rng), 0.37));
  }
  return out;
}

}  // namespace

TEST(GenerateBounds, RoadLimitsOnly)
{
  const auto c = fcp::generate_bounds({}, {}, -3.5, 3.5, 60, 1.0, 0.0);
  ASSERT_EQ(c.d_lb.size(), 60u);
  ASSERT_EQ(c.d_ub.size(), 60u);
  for (int k = 0; k < 60; ++k) {
    EXPECT_EQ(c.d_lb[k], -3.5);
    EXPECT_EQ(c.d_ub[k], 3.5);
    EXPECT_EQ(c.tightened[k], 0);
  }
  EXPECT_TRUE(c.feasible(1.8));
}

TEST(GenerateBounds, CornerSpillToNextCell)
{
  const std::vector<ObstaclePolygon> lb{box(10.0, 14.0, -3.0, -1.0)};
  const auto c = fcp::generate_bounds(lb, {}, -3.5, 3.5, 60, 1.0, 0.0);
  for (int k = 0; k < 60; ++k) {
    const bool covered = k >= 10 && k <= 15;
    EXPECT_EQ(c.d_lb[k], covered ? -1.0 : -3.5) << k;
    EXPECT_EQ(c.tightened[k], covered ? 1 : 0) << k;
    EXPECT_EQ(c.d_ub[k], 3.5);
  }
}

TEST(GenerateBounds, HorizonClipping)
{
  const std::vector<ObstaclePolygon> ub{box(-5.0, 2.0, 1.0, 2.0), box(58.5, 70.0, 0.5, 2.0)};
  const auto c = fcp::generate_bounds({}, ub, -3.5, 3.5, 60, 1.0, 0.0);
  EXPECT_EQ(c.d_ub[0], 1.0);
  EXPECT_EQ(c.d_ub[3], 1.0);
  EXPECT_EQ(c.d_ub[4], 3.5);
  EXPECT_EQ(c.d_ub[58], 0.5);
  EXPECT_EQ(c.d_ub[59], 0.5);
}

TEST(GenerateBounds, StaysInsideRoad)
{
  const std::vector<ObstaclePolygon> lb{box(5, 8, -6.0, -4.0)};
  const std::vector<ObstaclePolygon> ub{box(5, 8, 4.0, 6.0)};
  const auto c = fcp::generate_bounds(lb, ub, -3.5, 3.5, 20, 1.0, 0.0);
  for (int k = 0; k < 20; ++k) {
    EXPECT_GE(c.d_lb[k], -3.5);
    EXPECT_LE(c.d_ub[k], 3.5);
  }
}

TEST(GenerateBounds, InfeasibleReportedNotThrown)
{
  const std::vector<ObstaclePolygon> lb{box(5, 8, -3.0, 1.0)};
  const std::vector<ObstaclePolygon> ub{box(5, 8, 0.5, 3.0)};
  const auto c = fcp::generate_bounds(lb, ub, -3.5, 3.5, 20, 1.0, 0.0);
  EXPECT_FALSE(c.feasible());
}

TEST(GenerateBounds, RejectsBadHorizon)
{
  EXPECT_THROW(fcp::generate_bounds({}, {}, -3.5, 3.5, 1, 1.0, 0.0), fcp::PlanningError);
  EXPECT_THROW(fcp::generate_bounds({}, {}, -3.5, 3.5, 60, 0.0, 0.0), fcp::PlanningError);
  EXPECT_THROW(fcp::generate_bounds({}, {}, 3.5, -3.5, 60, 1.0, 0.0), fcp::PlanningError);
}

TEST(GenerateBounds, MatchesPerCellOracle)
{
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> count(0, 10);
  std::uniform_real_distribution<double> us0(-5.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double s0 = us0(rng);
    const auto lb = random_set(rng, count(rng), s0 - 10, s0 + 70);
    const auto ub = random_set(rng, count(rng), s0 - 10, s0 + 70);
    const double ds = trial % 2 ? 1.0 : 0.7;
    const auto got = fcp::generate_bounds(lb, ub, -3.5, 3.5, 60, ds, s0);
    const auto want = oracle(lb, ub, -3.5, 3.5, 60, ds, s0);
    EXPECT_EQ(got.d_lb, want.d_lb);
    EXPECT_EQ(got.d_ub, want.d_ub);
  }
}

TEST(GenerateBounds, OrderInvariantAndMonotone)
{
  std::mt19937 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto lb = random_set(rng, 6, -5, 65);
    auto ub = random_set(rng, 6, -5, 65);
    const auto base = fcp::generate_bounds(lb, ub, -3.5, 3.5, 60, 1.0, 0.0);
    std::shuffle(lb.begin(), lb.end(), rng);
    for (auto & o : ub) {
      std::shuffle(o.edge_samples.begin(), o.edge_samples.end(), rng);
    }
    const auto shuffled = fcp::generate_bounds(lb, ub, -3.5, 3.5, 60, 1.0, 0.0);
    EXPECT_EQ(base.d_lb, shuffled.d_lb);
    EXPECT_EQ(base.d_ub, shuffled.d_ub);

    lb.push_back(random_set(rng, 1, 0, 60)[0]);
    const auto tighter = fcp::generate_bounds(lb, ub, -3.5, 3.5, 60, 1.0, 0.0);
    for (int k = 0; k < 60; ++k) {
      EXPECT_GE(tighter.d_lb[k], base.d_lb[k]);
      EXPECT_LE(tighter.d_ub[k], base.d_ub[k]);
    }
  }
}

TEST(GenerateBounds, OperationCountLinearInPoints)
{
  std::mt19937 rng(9);
  const auto lb = random_set(rng, 20, 0, 60);
  auto doubled = lb;
  doubled.insert(doubled.end(), lb.begin(), lb.end());
  fcp::BoundaryStats one;
  fcp::BoundaryStats two;
  fcp::generate_bounds(lb, {}, -3.5, 3.5, 60, 1.0, 0.0, &one);
  fcp::generate_bounds(doubled, {}, -3.5, 3.5, 60, 1.0, 0.0, &two);
  std::size_t points = 0;
  for (const auto & o : lb) {
    points += o.edge_samples.size();
  }
  EXPECT_EQ(one.points_visited, points);
  EXPECT_EQ(two.points_visited, 2 * points);
}
