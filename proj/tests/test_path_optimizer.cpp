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


#include "fcp/path_optimizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fcp/errors.hpp"

using fcp::ControlSequence;
using fcp::Corridor;
using fcp::LateralPrediction;
using fcp::PlannerWeights;
using fcp::SolveStatus;
using fcp::SpaceState;

namespace
{

Corridor open_corridor(int n, double lb = -2.4, double ub = 2.4)
{
  return fcp::generate_bounds({}, {}, lb, ub, n, 1.0, 0.0);
}

// Direct transcription of the objective, independent of the solver code.
double reference_cost(
  const ControlSequence & c, const Corridor & corr, const std::vector<LateralPrediction> & dyn,
  const PlannerWeights & w, const SpaceState & init)
{
  std::vector<SpaceState> x{init};
  for (double u : c.u) {
    const auto & p = x.back();
    x.push_back(
      {p.s + w.ds, p.d + std::tan(p.phi + u) * w.ds,
       p.phi + w.ds / w.l_r * std::sin(u) / std::cos(p.phi + u)});
  }
  double j = 0.0;
  for (std::size_t k = 1; k < x.size(); ++k) {
    const double d = x[k].d;
    j += w.q_d * d * d;
    if (corr.tightened[k]) {
      const double mid = 0.5 * (corr.d_lb[k] + corr.d_ub[k]);
      j += w.lambda_risk * (d - mid) * (d - mid);
    }
    for (const auto & p : dyn) {
      if (k < p.size() && p[k]) {
        j += w.lambda_dyn / ((*p[k] - d) * (*p[k] - d) + w.eps_dyn);
      }
    }
  }
  for (std::size_t k = 0; k < c.u.size(); ++k) {
    const double t = std::tan(c.u[k]);
    j += w.q_u * c.u[k] * c.u[k] + w.lambda_curve * t * t + w.lambda_alpha * c.alpha[k] * c.alpha[k];
  }
  return j;
}

ControlSequence random_controls(std::mt19937 & rng, int n, double amp)
{
  std::uniform_real_distribution<double> uu(-amp, amp);
  std::uniform_real_distribution<double> ua(0.0, 0.2);
  ControlSequence c;
  for (int k = 0; k + 1 < n; ++k) {
    c.u.push_back(uu(rng) / (1.0 + 0.2 * k));
    c.alpha.push_back(ua(rng));
  }
  return c;
}

Corridor bumpy_corridor(int n)
{
  auto c = open_corridor(n);
  for (int k = 10; k < 20 && k < n; ++k) {
    c.d_lb[k] = -0.8;
    c.tightened[k] = 1;
  }
  for (int k = 30; k < 38 && k < n; ++k) {
    c.d_ub[k] = 0.6;
    c.tightened[k] = 1;
  }
  return c;
}

double sum(const std::vector<double> & v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void expect_within(const fcp::PlannerSolution & sol, const Corridor & corr, double tol)
{
  for (int k = 0; k < corr.n; ++k) {
    const double a = k == 0 ? 0.0 : sol.controls.alpha[k - 1];
    EXPECT_GE(sol.path[k].d, corr.d_lb[k] - a - tol) << k;
    EXPECT_LE(sol.path[k].d, corr.d_ub[k] + a + tol) << k;
  }
  for (std::size_t j = 0; j < sol.controls.u.size(); ++j) {
    EXPECT_GE(sol.controls.u[j], sol.control_bounds[j].lower - 1e-12);
    EXPECT_LE(sol.controls.u[j], sol.control_bounds[j].upper + 1e-12);
  }
}

}  // namespace

TEST(EvaluateCost, MatchesDirectTranscription)
{
  PlannerWeights w;
  w.n = 30;
  const auto corr = bumpy_corridor(30);
  std::vector<LateralPrediction> dyn(1, LateralPrediction(30));
  for (int k = 5; k < 15; ++k) dyn[0][k] = 2.5 - 0.1 * k;
  std::mt19937 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto c = random_controls(rng, 30, 0.1);
    const SpaceState init{0.0, 0.3, 0.02};
    const auto got = fcp::evaluate_cost(c, corr, dyn, w, init);
    EXPECT_NEAR(got.cost, reference_cost(c, corr, dyn, w, init), 1e-9 * std::abs(got.cost));
  }
}

TEST(EvaluateCost, GradientMatchesCentralDifferences)
{
  PlannerWeights w;
  w.n = 40;
  const auto corr = bumpy_corridor(40);
  std::vector<LateralPrediction> dyn(1, LateralPrediction(40));
  for (int k = 20; k < 32; ++k) dyn[0][k] = 1.5;
  std::mt19937 rng(5);
  const SpaceState init{0.0, -0.2, 0.01};
  for (int i = 0; i < 10; ++i) {
    const auto c = random_controls(rng, 40, 0.08);
    const auto g = fcp::evaluate_cost(c, corr, dyn, w, init).gradient;
    const std::size_t m = c.u.size();
    ASSERT_EQ(g.size(), 2 * m);
    for (std::size_t j = 0; j < 2 * m; ++j) {
      const double h = 1e-6;
      auto plus = c;
      auto minus = c;
      auto & vp = j < m ? plus.u[j] : plus.alpha[j - m];
      auto & vm = j < m ? minus.u[j] : minus.alpha[j - m];
      vp += h;
      vm -= h;
      const double fd = (reference_cost(plus, corr, dyn, w, init) -
                         reference_cost(minus, corr, dyn, w, init)) / (2 * h);
      EXPECT_LE(std::abs(g[j] - fd) / std::max(1.0, std::abs(fd)), 1e-5) << j;
    }
  }
}

TEST(EvaluateCost, ClosedFormCases)
{
  PlannerWeights w;
  const auto corr = open_corridor(w.n);
  const std::size_t m = w.n - 1;
  const ControlSequence zero{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  EXPECT_EQ(fcp::evaluate_cost(zero, corr, {}, w, {}).cost, 0.0);

  std::vector<LateralPrediction> dyn(1, LateralPrediction(w.n));
  int crossed = 0;
  for (int k = 20; k < 35; ++k, ++crossed) dyn[0][k] = 3.0;
  const double expected = w.lambda_dyn * crossed / (9.0 + w.eps_dyn);
  EXPECT_NEAR(fcp::evaluate_cost(zero, corr, dyn, w, {}).cost, expected, 1e-12);
  EXPECT_NEAR(expected, w.lambda_dyn * crossed / 9.0, 0.01 * expected);
}

TEST(EvaluateCost, RejectsLengthMismatch)
{
  PlannerWeights w;
  ControlSequence c{std::vector<double>(10, 0.0), std::vector<double>(10, 0.0)};
  EXPECT_THROW(fcp::evaluate_cost(c, open_corridor(60), {}, w, {}), fcp::PlanningError);
}

TEST(Rollout, JacobianMatchesFiniteDifferences)
{
  PlannerWeights w;
  std::mt19937 rng(11);
  const auto c = random_controls(rng, 25, 0.1);
  const SpaceState init{0.0, 0.5, -0.05};
  const auto jac = fcp::rollout_jacobian(init, c.u, w);
  const std::size_t m = c.u.size();
  ASSERT_EQ(jac.size(), (m + 1) * m);
  for (std::size_t j = 0; j < m; ++j) {
    auto up = c.u;
    auto dn = c.u;
    up[j] += 1e-6;
    dn[j] -= 1e-6;
    const auto xp = fcp::rollout(init, up, w);
    const auto xm = fcp::rollout(init, dn, w);
    for (std::size_t k = 0; k <= m; ++k) {
      const double fd = (xp[k].d - xm[k].d) / 2e-6;
      EXPECT_NEAR(jac[k * m + j], fd, 1e-6 * std::max(1.0, std::abs(fd)));
      if (k <= j) {
        EXPECT_EQ(jac[k * m + j], 0.0);
      }
    }
  }
}

TEST(Solve, CentredStartStaysOnReference)
{
  PlannerWeights w;
  const auto corr = open_corridor(w.n);
  const std::vector<double> deltas(w.n - 1, 0.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, 0.0, 0.0}, deltas);
  EXPECT_EQ(sol.status, SolveStatus::kOptimal);
  ASSERT_EQ(sol.path.size(), static_cast<std::size_t>(w.n));
  for (const auto & p : sol.path) {
    EXPECT_NEAR(p.d, 0.0, 1e-9);
  }
  EXPECT_EQ(sum(sol.controls.alpha), 0.0);
  EXPECT_EQ(sol.max_violation, 0.0);
}

TEST(Solve, OffsetStartConvergesToReference)
{
  PlannerWeights w;
  const auto corr = open_corridor(w.n);
  const std::vector<double> deltas(w.n - 1, 0.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, 1.5, 0.0}, deltas);
  EXPECT_NE(sol.status, SolveStatus::kInfeasible);
  EXPECT_DOUBLE_EQ(sol.path[0].d, 1.5);
  EXPECT_LT(std::abs(sol.path.back().d), 0.3);
  for (std::size_t k = 1; k < sol.path.size(); ++k) {
    EXPECT_LE(sol.path[k].d, sol.path[k - 1].d + 0.05);
    EXPECT_DOUBLE_EQ(sol.path[k].s, static_cast<double>(k));
  }
  expect_within(sol, corr, 1e-6);
  EXPECT_EQ(sum(sol.controls.alpha), 0.0);
}

TEST(Solve, AvoidsTightenedBound)
{
  PlannerWeights w;
  auto corr = open_corridor(w.n);
  for (int k = 15; k < 25; ++k) {
    corr.d_lb[k] = 0.8;
    corr.tightened[k] = 1;
  }
  const std::vector<double> deltas(w.n - 1, 0.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, 0.0, 0.0}, deltas);
  EXPECT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_LE(sol.max_violation, 1e-6);
  EXPECT_LT(sum(sol.controls.alpha), 1e-6);
  expect_within(sol, corr, 1e-6);
  for (int k = 15; k < 25; ++k) {
    EXPECT_GE(sol.path[k].d, 0.8 - 1e-6);
  }
}

TEST(Solve, RaisedLowerBoundFromBelow)
{
  PlannerWeights w;
  auto corr = fcp::generate_bounds({}, {}, -2.3, 2.3, w.n, 1.0, 0.0);
  for (int k = 10; k <= 20; ++k) {
    corr.d_lb[k] = -1.0;
    corr.tightened[k] = 1;
  }
  const std::vector<double> deltas(w.n - 1, 0.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, -2.0, 0.0}, deltas);
  EXPECT_NE(sol.status, SolveStatus::kInfeasible);
  EXPECT_LE(sol.max_violation, w.alpha_max);
  expect_within(sol, corr, 1e-6);
  for (int k = 10; k <= 20; ++k) {
    EXPECT_GE(sol.path[k].d, -1.0 - sol.controls.alpha[k - 1] - 1e-6);
  }
  for (int k = 1; k <= 10; ++k) {
    EXPECT_GE(sol.path[k].d, sol.path[k - 1].d - 1e-9);
  }
  const auto states = fcp::rollout({0.0, -2.0, 0.0}, sol.controls.u, w);
  for (std::size_t k = 0; k < states.size(); ++k) {
    EXPECT_NEAR(states[k].phi, sol.phi[k], 1e-12);
  }
}

TEST(Solve, SlackAbsorbsSmallCrossing)
{
  PlannerWeights w;
  auto corr = open_corridor(w.n);
  for (int k = 20; k < 24; ++k) {
    corr.d_lb[k] = 0.6;
    corr.d_ub[k] = 0.4;
    corr.tightened[k] = 1;
  }
  const std::vector<double> deltas(w.n - 1, 0.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, 0.0, 0.0}, deltas);
  EXPECT_NE(sol.status, SolveStatus::kInfeasible);
  EXPECT_GT(sol.max_violation, 0.05);
  EXPECT_LE(sol.max_violation, w.alpha_max + 1e-6);
  EXPECT_GT(sum(sol.controls.alpha), 0.0);
  expect_within(sol, corr, 1e-6);
}

TEST(Solve, ReportsInfeasibleCorridor)
{
  PlannerWeights w;
  auto corr = open_corridor(w.n);
  for (int k = 20; k < 24; ++k) {
    corr.d_lb[k] = 1.5;
    corr.d_ub[k] = 0.5;
  }
  const std::vector<double> deltas(w.n - 1, 0.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, 0.0, 0.0}, deltas);
  EXPECT_EQ(sol.status, SolveStatus::kInfeasible);
}

TEST(Solve, InitialStateOutsideCorridorIsInfeasible)
{
  PlannerWeights w;
  const auto corr = open_corridor(w.n);
  const std::vector<double> deltas(w.n - 1, 0.0);
  EXPECT_EQ(fcp::solve(corr, {}, w, {0.0, 3.0, 0.0}, deltas).status, SolveStatus::kInfeasible);
}

TEST(Solve, DynamicRiskPushesAway)
{
  PlannerWeights w;
  const auto corr = open_corridor(w.n);
  const std::vector<double> deltas(w.n - 1, 0.0);
  std::vector<LateralPrediction> dyn(1, LateralPrediction(w.n));
  for (int k = 10; k < 40; ++k) dyn[0][k] = 1.0;
  const auto sol = fcp::solve(corr, dyn, w, {0.0, 0.0, 0.0}, deltas);
  EXPECT_NE(sol.status, SolveStatus::kInfeasible);
  for (int k = 12; k < 38; ++k) {
    EXPECT_LT(sol.path[k].d, -0.05) << k;
  }
}

TEST(Solve, CurvedReferenceKeepsControlsInShiftedBox)
{
  PlannerWeights w;
  const auto corr = open_corridor(w.n);
  const std::vector<double> deltas(w.n - 1, 1.0 / 30.0);
  const auto sol = fcp::solve(corr, {}, w, {0.0, 0.5, 0.0}, deltas);
  EXPECT_NE(sol.status, SolveStatus::kInfeasible);
  for (const auto & b : sol.control_bounds) {
    EXPECT_NEAR(b.upper - b.lower, 0.6, 1e-12);
    EXPECT_LT(b.upper, 0.3);
  }
  expect_within(sol, corr, 1e-6);
}

TEST(Solve, DeterministicAndWarmStartConsistent)
{
  PlannerWeights w;
  const auto corr = bumpy_corridor(w.n);
  const std::vector<double> deltas(w.n - 1, 0.0);
  const SpaceState init{0.0, 0.2, 0.0};
  const auto a = fcp::solve(corr, {}, w, init, deltas);
  const auto b = fcp::solve(corr, {}, w, init, deltas);
  EXPECT_EQ(a.controls.u, b.controls.u);
  EXPECT_EQ(a.cost, b.cost);
  const auto warm = fcp::solve(corr, {}, w, init, deltas, &a.warm_start);
  EXPECT_NE(warm.status, SolveStatus::kInfeasible);
  EXPECT_NEAR(warm.cost, a.cost, 1e-3 * a.cost);
  EXPECT_LE(warm.iterations, 3);
}

TEST(ShiftWarmStart, DropsAndRepeats)
{
  fcp::WarmStart ws;
  ws.controls.u = {1, 2, 3, 4};
  ws.controls.alpha = {0, 0, 0.1, 0.2};
  ws.mu_lower = {5, 6, 7, 8};
  ws.penalty = 1e3;
  const auto out = fcp::shift_warm_start(ws, 1);
  EXPECT_EQ(out.controls.u, (std::vector<double>{2, 3, 4, 4}));
  EXPECT_EQ(out.controls.alpha, (std::vector<double>{0, 0.1, 0.2, 0.2}));
  EXPECT_EQ(out.mu_lower, (std::vector<double>{6, 7, 8, 8}));
  EXPECT_TRUE(out.mu_upper.empty());
  EXPECT_EQ(out.penalty, 1e3);
  EXPECT_EQ(fcp::shift_warm_start(ws, 0).controls.u, ws.controls.u);
  EXPECT_EQ(fcp::shift_warm_start(ws, 9).controls.u, (std::vector<double>{4, 4, 4, 4}));
}

TEST(PlannerWeights, Validation)
{
  PlannerWeights w;
  EXPECT_NO_THROW(w.validate());
  w.q_u = -1.0;
  EXPECT_THROW(w.validate(), fcp::PlanningError);
  w = {};
  w.n = 1;
  EXPECT_THROW(w.validate(), fcp::PlanningError);
  w = {};
  w.delta_min = 0.7;
  EXPECT_THROW(w.validate(), fcp::PlanningError);
  EXPECT_STREQ(fcp::to_string(SolveStatus::kMaxIter), "MaxIter");
}
