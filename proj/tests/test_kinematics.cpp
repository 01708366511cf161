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


#include "fcp/kinematics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fcp/errors.hpp"

namespace
{

constexpr double kPi = std::numbers::pi;

fcp::ErrorCode code_of(auto && fn)
{
  try {
    fn();
  } catch (const fcp::PlanningError & e) {
    return e.code();
  }
  ADD_FAILURE() << "no PlanningError";
  return fcp::ErrorCode::kConfig;
}

}  // namespace

TEST(Beta, ExactAgainstClosedForm)
{
  EXPECT_DOUBLE_EQ(fcp::beta_exact(0.0, 1.5, 1.5), 0.0);
  EXPECT_NEAR(fcp::beta_exact(0.6, 1.5, 1.5), std::atan(0.5 * std::tan(0.6)), 1e-15);
  EXPECT_NEAR(fcp::beta_exact(kPi / 4, 1.0, 3.0), std::atan(0.75), 1e-15);
  EXPECT_NEAR(fcp::beta_approx(0.6, 1.5, 1.5), 0.3, 1e-15);
}

TEST(Beta, ApproximationNeverExceedsExact)
{
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ud(-kPi / 2 + 1e-3, kPi / 2 - 1e-3);
  std::uniform_real_distribution<double> ul(0.1, 4.0);
  for (int i = 0; i < 20000; ++i) {
    const double delta = ud(rng);
    const double lf = ul(rng);
    const double lr = ul(rng);
    const double ex = fcp::beta_exact(delta, lf, lr);
    const double ap = fcp::beta_approx(delta, lf, lr);
    EXPECT_GE(std::abs(ex) + 1e-15, std::abs(ap));
    EXPECT_GE(ex * delta, 0.0);
  }
}

TEST(Beta, RejectsRightAngleSteering)
{
  EXPECT_EQ(code_of([] { fcp::beta_exact(kPi / 2, 1.5, 1.5); }), fcp::ErrorCode::kDomainError);
  EXPECT_EQ(code_of([] { fcp::beta_approx(-2.0, 1.5, 1.5); }), fcp::ErrorCode::kDomainError);
}

TEST(Propagate, HandComputedStep)
{
  const auto next = fcp::propagate({0.0, 0.0, 0.0}, 0.1, 1.0, 1.5);
  EXPECT_DOUBLE_EQ(next.s, 1.0);
  EXPECT_NEAR(next.d, std::tan(0.1), 1e-15);
  EXPECT_NEAR(next.phi, std::tan(0.1) / 1.5, 1e-15);

  const auto tilted = fcp::propagate({3.0, 0.5, 0.2}, 0.0, 0.5, 1.5);
  EXPECT_DOUBLE_EQ(tilted.s, 3.5);
  EXPECT_NEAR(tilted.d, 0.5 + 0.5 * std::tan(0.2), 1e-15);
  EXPECT_DOUBLE_EQ(tilted.phi, 0.2);
}

TEST(Propagate, StraightLineIsFixedPoint)
{
  fcp::SpaceState x{0.0, 1.2, 0.0};
  for (int k = 0; k < 100; ++k) {
    x = fcp::propagate(x, 0.0, 1.0, 1.5);
  }
  EXPECT_DOUBLE_EQ(x.d, 1.2);
  EXPECT_DOUBLE_EQ(x.phi, 0.0);
  EXPECT_DOUBLE_EQ(x.s, 100.0);
}

TEST(Propagate, MirrorSymmetry)
{
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> uu(-0.3, 0.3);
  fcp::SpaceState a{0.0, 0.4, 0.05};
  fcp::SpaceState b{0.0, -0.4, -0.05};
  for (int k = 0; k < 40; ++k) {
    const double u = uu(rng);
    a = fcp::propagate(a, u, 1.0, 1.5);
    b = fcp::propagate(b, -u, 1.0, 1.5);
    EXPECT_DOUBLE_EQ(a.d, -b.d);
    EXPECT_DOUBLE_EQ(a.phi, -b.phi);
  }
}

TEST(Propagate, SingularityGuard)
{
  const double edge = kPi / 2 - 0.2;
  EXPECT_NO_THROW(fcp::propagate({0, 0, edge - 0.01}, 0.0, 1.0, 1.5));
  EXPECT_EQ(
    code_of([&] { fcp::propagate({0, 0, edge}, 0.05, 1.0, 1.5); }),
    fcp::ErrorCode::kSingularityGuard);
  EXPECT_EQ(
    code_of([] { fcp::propagate({0, 0, -1.3}, -0.2, 1.0, 1.5, 0.2); }),
    fcp::ErrorCode::kSingularityGuard);
}

TEST(CurvatureBounds, StraightReference)
{
  const auto b = fcp::curvature_bounds(0.0, 1.0, 1.5, 1.5, -0.6, 0.6);
  EXPECT_DOUBLE_EQ(b.lower, -0.3);
  EXPECT_DOUBLE_EQ(b.upper, 0.3);
}

TEST(CurvatureBounds, ShiftedByReferenceCurvature)
{
  // Circle of radius R: heading advances ds / R per step.
  for (double radius : {10.0, 25.0, 60.0}) {
    const auto b = fcp::curvature_bounds(1.0 / radius, 1.0, 1.5, 1.5, -0.6, 0.6);
    const double u_ref = std::atan(1.5 / radius);
    EXPECT_NEAR(b.lower, -0.3 - u_ref, 1e-15);
    EXPECT_NEAR(b.upper, 0.3 - u_ref, 1e-15);
    EXPECT_LE(b.lower, 0.0);
    EXPECT_GE(b.upper, 0.0);
  }
}

TEST(CurvatureBounds, EmptySetWhenReferenceTooTight)
{
  // atan(1.5 * 0.25) = 0.359 > 0.3
  EXPECT_EQ(
    code_of([] { fcp::curvature_bounds(0.25, 1.0, 1.5, 1.5, -0.6, 0.6); }),
    fcp::ErrorCode::kEmptyActuationSet);
  EXPECT_EQ(
    code_of([] { fcp::curvature_bounds(-0.25, 1.0, 1.5, 1.5, -0.6, 0.6); }),
    fcp::ErrorCode::kEmptyActuationSet);
}

TEST(CurvatureBounds, FromReferencePath)
{
  std::vector<fcp::Vec2> pts;
  const double radius = 40.0;
  for (int i = 0; i <= 200; ++i) {
    const double t = i * 0.01;
    pts.push_back({radius * std::sin(t), radius * (1.0 - std::cos(t))});
  }
  const auto ref = fcp::ReferencePath::build(pts, 0.25);
  const auto b = fcp::curvature_bounds(ref, 5.0, 3, 1.0, 1.5, 1.5, -0.6, 0.6);
  const double u_ref = std::atan(1.5 / radius);
  EXPECT_NEAR(b.lower, -0.3 - u_ref, 1e-4);
  EXPECT_NEAR(b.upper, 0.3 - u_ref, 1e-4);
}

TEST(Propagate, MatchesArcLengthModelOnStraightReference)
{
  // Arc-length bicycle model with beta replaced by u, stepped by dl = ds / cos(phi + u).
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> uu(-0.3, 0.3);
  fcp::SpaceState x{0.0, -0.7, 0.1};
  double px = 0.0;
  double py = -0.7;
  double psi = 0.1;
  for (int k = 0; k < 60; ++k) {
    const double u = std::clamp(uu(rng) - 0.5 * x.phi, -0.3, 0.3);
    const double dl = 1.0 / std::cos(psi + u);
    px += dl * std::cos(psi + u);
    py += dl * std::sin(psi + u);
    psi += dl / 1.5 * std::sin(u);
    x = fcp::propagate(x, u, 1.0, 1.5);
    EXPECT_NEAR(x.s, px, 1e-9);
    EXPECT_NEAR(x.d, py, 1e-9);
    EXPECT_NEAR(x.phi, psi, 1e-9);
  }
}
