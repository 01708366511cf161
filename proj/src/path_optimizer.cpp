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

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fcp/errors.hpp"

namespace fcp
{
namespace
{

constexpr double kInitialPenalty = 100.0;
constexpr double kMaxPenalty = 1e9;
constexpr double kFeasibilityTolerance = 1e-7;
constexpr double kArmijo = 1e-4;
constexpr int kMaxOuterIterations = 60;
constexpr int kMaxBacktracks = 40;
constexpr double kInfeasiblePenalty = 1e6;
constexpr double kInfeasibleExcess = 1e-4;

struct Trajectory
{
  std::vector<double> d;
  std::vector<double> phi;
  std::vector<double> theta;
};

bool roll(
  const SpaceState & init, std::span<const double> u, const PlannerWeights & w, Trajectory & out)
{
  const auto m = u.size();
  out.d.resize(m + 1);
  out.phi.resize(m + 1);
  out.theta.resize(m);
  out.d[0] = init.d;
  out.phi[0] = init.phi;
  const double limit = 0.5 * std::numbers::pi - w.eps_guard;
  for (std::size_t j = 0; j < m; ++j) {
    const double theta = out.phi[j] + u[j];
    if (!(std::abs(theta) <= limit)) {
      return false;
    }
    const double c = std::cos(theta);
    out.theta[j] = theta;
    out.d[j + 1] = out.d[j] + std::tan(theta) * w.ds;
    out.phi[j + 1] = out.phi[j] + w.ds / w.l_r * std::sin(u[j]) / c;
  }
  return true;
}

// Cost terms of one evaluation. d1/d2 are first and (Gauss-Newton) second
// derivatives with respect to d_k and u_j.
struct Terms
{
  double value{0.0};
  std::vector<double> stage_d1;
  std::vector<double> stage_d2;
  std::vector<double> control_d1;
  std::vector<double> control_d2;
};

// Augmented-Lagrangian state for d_lb - alpha - d <= 0 and d - d_ub - alpha <= 0.
struct Multipliers
{
  std::vector<double> lower;
  std::vector<double> upper;
  double penalty{kInitialPenalty};
};

class ShootingProblem
{
public:
  ShootingProblem(
    const Corridor & corridor, std::span<const LateralPrediction> dynamic,
    const PlannerWeights & w, const SpaceState & init)
  : corridor_(corridor), dynamic_(dynamic), w_(w), init_(init), m_(static_cast<std::size_t>(w.n - 1))
  {
  }

  std::size_t steps() const { return m_; }

  // Objective without constraint terms. Returns false on the guard.
  bool objective(std::span<const double> u, std::span<const double> alpha, Trajectory & traj, Terms & t) const
  {
    if (!roll(init_, u, w_, traj)) {
      return false;
    }
    t.value = 0.0;
    t.stage_d1.assign(m_ + 1, 0.0);
    t.stage_d2.assign(m_ + 1, 0.0);
    t.control_d1.resize(m_);
    t.control_d2.resize(m_);
    for (std::size_t k = 1; k <= m_; ++k) {
      const double d = traj.d[k];
      double v = w_.q_d * d * d;
      double g1 = 2.0 * w_.q_d * d;
      double g2 = 2.0 * w_.q_d;
      if (corridor_.tightened[k]) {
        const double e = d - corridor_.midline(static_cast<int>(k));
        v += w_.lambda_risk * e * e;
        g1 += 2.0 * w_.lambda_risk * e;
        g2 += 2.0 * w_.lambda_risk;
      }
      for (const auto & pred : dynamic_) {
        if (k >= pred.size() || !pred[k]) {
          continue;
        }
        const double x = *pred[k] - d;
        const double den = x * x + w_.eps_dyn;
        v += w_.lambda_dyn / den;
        g1 += w_.lambda_dyn * 2.0 * x / (den * den);
        g2 += std::max(0.0, w_.lambda_dyn * (6.0 * x * x - 2.0 * w_.eps_dyn) / (den * den * den));
      }
      t.value += v;
      t.stage_d1[k] = g1;
      t.stage_d2[k] = g2;
    }
    for (std::size_t j = 0; j < m_; ++j) {
      const double tn = std::tan(u[j]);
      const double sec2 = 1.0 + tn * tn;
      t.value += w_.q_u * u[j] * u[j] + w_.lambda_curve * tn * tn + w_.lambda_alpha * alpha[j] * alpha[j];
      t.control_d1[j] = 2.0 * w_.q_u * u[j] + 2.0 * w_.lambda_curve * tn * sec2;
      t.control_d2[j] = 2.0 * w_.q_u + w_.lambda_curve * (2.0 * sec2 * sec2 + 4.0 * tn * tn * sec2);
    }
    return true;
  }

  // Reverse accumulation of sum_k dcost/dd_k * dd_k/du plus direct terms.
  void adjoint(
    std::span<const double> u, const Trajectory & traj, std::span<const double> d_sens,
    std::span<const double> control_d1, std::span<double> grad_u) const
  {
    double lam_d = 0.0;
    double lam_phi = 0.0;
    const double k_phi = w_.ds / w_.l_r;
    for (std::size_t jj = m_; jj-- > 0;) {
      lam_d += d_sens[jj + 1];
      const double theta = traj.theta[jj];
      const double c = std::cos(theta);
      const double sec2 = 1.0 / (c * c);
      grad_u[jj] = control_d1[jj] + lam_d * sec2 * w_.ds + lam_phi * k_phi * std::cos(traj.phi[jj]) * sec2;
      lam_phi = lam_phi * (1.0 + k_phi * std::sin(u[jj]) * std::sin(theta) * sec2) + lam_d * sec2 * w_.ds;
    }
  }

  Eigen::MatrixXd jacobian(std::span<const double> u, const Trajectory & traj) const
  {
    const auto n = m_ + 1;
    Eigen::MatrixXd jd = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m_));
    std::vector<double> jp(m_, 0.0);
    const double k_phi = w_.ds / w_.l_r;
    for (std::size_t j = 0; j < m_; ++j) {
      const double theta = traj.theta[j];
      const double c = std::cos(theta);
      const double sec2 = 1.0 / (c * c);
      const double dphi_dtheta = k_phi * std::sin(u[j]) * std::sin(theta) * sec2;
      const double dphi_du = k_phi * std::cos(u[j]) / c;
      const auto row = static_cast<Eigen::Index>(j);
      for (std::size_t i = 0; i <= j; ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        const double dtheta = jp[i] + (i == j ? 1.0 : 0.0);
        jd(row + 1, col) = jd(row, col) + sec2 * w_.ds * dtheta;
        jp[i] = jp[i] + (i == j ? dphi_du : 0.0) + dphi_dtheta * dtheta;
      }
    }
    return jd;
  }

  // Constraint residuals at station k = j + 1.
  double lower_residual(std::size_t j, const Trajectory & traj, std::span<const double> alpha) const
  {
    return corridor_.d_lb[j + 1] - alpha[j] - traj.d[j + 1];
  }
  double upper_residual(std::size_t j, const Trajectory & traj, std::span<const double> alpha) const
  {
    return traj.d[j + 1] - corridor_.d_ub[j + 1] - alpha[j];
  }

  const PlannerWeights & weights() const { return w_; }

private:
  const Corridor & corridor_;
  std::span<const LateralPrediction> dynamic_;
  const PlannerWeights & w_;
  SpaceState init_;
  std::size_t m_;
};

// Augmented Lagrangian value, gradient and Gauss-Newton Hessian over
// z = (u, alpha).
struct Model
{
  double value{0.0};
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

bool evaluate_al(
  const ShootingProblem & problem, const Multipliers & mult, const Eigen::VectorXd & z,
  bool with_derivatives, Model & out, Trajectory & traj)
{
  const auto m = problem.steps();
  const std::span<const double> u(z.data(), m);
  const std::span<const double> alpha(z.data() + m, m);
  Terms terms;
  if (!problem.objective(u, alpha, traj, terms)) {
    return false;
  }
  const double rho = mult.penalty;
  double value = terms.value;
  std::vector<double> d_sens = terms.stage_d1;
  std::vector<double> lo_active(m, 0.0);
  std::vector<double> hi_active(m, 0.0);
  std::vector<double> alpha_grad(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double ml = std::max(0.0, mult.lower[j] + rho * problem.lower_residual(j, traj, alpha));
    const double mh = std::max(0.0, mult.upper[j] + rho * problem.upper_residual(j, traj, alpha));
    value += (ml * ml - mult.lower[j] * mult.lower[j] + mh * mh - mult.upper[j] * mult.upper[j]) / (2.0 * rho);
    d_sens[j + 1] += mh - ml;
    alpha_grad[j] = 2.0 * problem.weights().lambda_alpha * alpha[j] - ml - mh;
    lo_active[j] = ml > 0.0 ? 1.0 : 0.0;
    hi_active[j] = mh > 0.0 ? 1.0 : 0.0;
  }
  out.value = value;
  if (!with_derivatives) {
    return true;
  }

  const auto mi = static_cast<Eigen::Index>(m);
  out.gradient.resize(2 * mi);
  std::vector<double> grad_u(m);
  problem.adjoint(u, traj, d_sens, terms.control_d1, grad_u);
  for (std::size_t j = 0; j < m; ++j) {
    out.gradient(static_cast<Eigen::Index>(j)) = grad_u[j];
    out.gradient(mi + static_cast<Eigen::Index>(j)) = alpha_grad[j];
  }

  const Eigen::MatrixXd jd = problem.jacobian(u, traj);
  Eigen::VectorXd stage_w(mi + 1);
  stage_w(0) = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    stage_w(static_cast<Eigen::Index>(j) + 1) =
      terms.stage_d2[j + 1] + rho * (lo_active[j] + hi_active[j]);
  }
  out.hessian.setZero(2 * mi, 2 * mi);
  out.hessian.topLeftCorner(mi, mi).noalias() = jd.transpose() * stage_w.asDiagonal() * jd;
  for (std::size_t j = 0; j < m; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out.hessian(jj, jj) += terms.control_d2[j];
    out.hessian(mi + jj, mi + jj) =
      2.0 * problem.weights().lambda_alpha + rho * (lo_active[j] + hi_active[j]);
    const double coupling = rho * (lo_active[j] - hi_active[j]);
    if (coupling != 0.0) {
      const Eigen::VectorXd col = coupling * jd.row(jj + 1).transpose();
      out.hessian.block(0, mi + jj, mi, 1) = col;
      out.hessian.block(mi + jj, 0, 1, mi) = col.transpose();
    }
  }
  return true;
}

double projected_gradient_norm(
  const Eigen::VectorXd & z, const Eigen::VectorXd & g, const Eigen::VectorXd & lo,
  const Eigen::VectorXd & hi)
{
  double norm = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double step = std::clamp(z(i) - g(i), lo(i), hi(i));
    norm = std::max(norm, std::abs(z(i) - step));
  }
  return norm;
}

// Projected Newton iterations (Bertsekas' two-metric scheme) on the augmented
// Lagrangian for fixed multipliers. Returns true once the projected gradient
// is below tolerance.
bool minimize_inner(
  const ShootingProblem & problem, const Multipliers & mult, const Eigen::VectorXd & lo,
  const Eigen::VectorXd & hi, Eigen::VectorXd & z, int & iterations, int budget)
{
  const auto & w = problem.weights();
  Model model;
  Trajectory traj;
  Model trial;
  Trajectory trial_traj;
  const auto size = z.size();
  while (true) {
    if (!evaluate_al(problem, mult, z, true, model, traj)) {
      return false;
    }
    const double pg = projected_gradient_norm(z, model.gradient, lo, hi);
    if (pg < w.tolerance) {
      return true;
    }
    if (iterations >= budget) {
      return false;
    }
    ++iterations;

    const double eps = std::min(1e-3, pg);
    std::vector<Eigen::Index> free;
    std::vector<char> active(static_cast<std::size_t>(size), 0);
    for (Eigen::Index i = 0; i < size; ++i) {
      const bool at_lo = z(i) - lo(i) <= eps && model.gradient(i) > 0.0;
      const bool at_hi = hi(i) - z(i) <= eps && model.gradient(i) < 0.0;
      if (at_lo || at_hi) {
        active[static_cast<std::size_t>(i)] = 1;
      } else {
        free.push_back(i);
      }
    }

    Eigen::VectorXd dir = Eigen::VectorXd::Zero(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      if (active[static_cast<std::size_t>(i)]) {
        dir(i) = -model.gradient(i) / std::max(model.hessian(i, i), 1e-12);
      }
    }
    if (!free.empty()) {
      const auto nf = static_cast<Eigen::Index>(free.size());
      Eigen::MatrixXd hf(nf, nf);
      Eigen::VectorXd gf(nf);
      for (Eigen::Index a = 0; a < nf; ++a) {
        gf(a) = model.gradient(free[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = 0; b < nf; ++b) {
          hf(a, b) = model.hessian(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(b)]);
        }
      }
      double damping = 1e-10 * std::max(1.0, hf.diagonal().cwiseAbs().maxCoeff());
      Eigen::LLT<Eigen::MatrixXd> llt;
      for (int attempt = 0; attempt < 12; ++attempt) {
        llt.compute(hf + damping * Eigen::MatrixXd::Identity(nf, nf));
        if (llt.info() == Eigen::Success) {
          break;
        }
        damping *= 100.0;
      }
      const Eigen::VectorXd step = llt.solve(-gf);
      for (Eigen::Index a = 0; a < nf; ++a) {
        dir(free[static_cast<std::size_t>(a)]) = step(a);
      }
    }

    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
      Eigen::VectorXd cand = (z + t * dir).cwiseMax(lo).cwiseMin(hi);
      if (evaluate_al(problem, mult, cand, false, trial, trial_traj) &&
          trial.value <= model.value + kArmijo * model.gradient.dot(cand - z)) {
        z = std::move(cand);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No descent along the projected arc; treat as stationary to the
      // accuracy the model allows.
      return pg < 10.0 * w.tolerance;
    }
  }
}

enum class Outcome { kConverged, kBudget, kInfeasible };

// Method-of-multipliers outer loop. With `detect_infeasible` set, gives up
// once a large penalty still leaves the constraints clearly violated.
Outcome run_augmented_lagrangian(
  const ShootingProblem & problem, const SpaceState & init, const Eigen::VectorXd & lo,
  const Eigen::VectorXd & hi, Eigen::VectorXd & z, Multipliers & mult, int & iterations,
  int budget, bool detect_infeasible)
{
  const auto & w = problem.weights();
  const auto m = problem.steps();
  Trajectory traj;
  std::vector<double> g_lo(m);
  std::vector<double> g_hi(m);
  double previous_violation = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < kMaxOuterIterations; ++outer) {
    const bool stationary = minimize_inner(problem, mult, lo, hi, z, iterations, budget);
    if (!roll(init, std::span<const double>(z.data(), m), w, traj)) {
      return Outcome::kInfeasible;
    }
    const std::span<const double> alpha(z.data() + m, m);
    double violation = 0.0;
    double excess = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      g_lo[j] = problem.lower_residual(j, traj, alpha);
      g_hi[j] = problem.upper_residual(j, traj, alpha);
      excess = std::max({excess, g_lo[j], g_hi[j]});
      violation = std::max(
        {violation, std::abs(std::min(-g_lo[j], mult.lower[j] / mult.penalty)),
         std::abs(std::min(-g_hi[j], mult.upper[j] / mult.penalty))});
    }
    if (stationary && violation <= kFeasibilityTolerance) {
      return Outcome::kConverged;
    }
    if (detect_infeasible && mult.penalty >= kInfeasiblePenalty && excess > kInfeasibleExcess) {
      return Outcome::kInfeasible;
    }
    if (iterations >= budget) {
      return Outcome::kBudget;
    }
    for (std::size_t j = 0; j < m; ++j) {
      mult.lower[j] = std::max(0.0, mult.lower[j] + mult.penalty * g_lo[j]);
      mult.upper[j] = std::max(0.0, mult.upper[j] + mult.penalty * g_hi[j]);
    }
    if (violation > 0.25 * previous_violation) {
      mult.penalty = std::min(mult.penalty * 10.0, kMaxPenalty);
    }
    previous_violation = violation;
  }
  return Outcome::kBudget;
}

}  // namespace

void PlannerWeights::validate() const
{
  const bool ok = q_d >= 0 && q_u >= 0 && lambda_curve >= 0 && lambda_risk >= 0 &&
                  lambda_dyn >= 0 && lambda_alpha >= 0 && alpha_max >= 0 && ds > 0 && n >= 2 &&
                  l_f > 0 && l_r > 0 && delta_min < delta_max && eps_guard > 0 &&
                  eps_guard < 0.5 * std::numbers::pi && eps_dyn > 0 && max_iterations > 0 &&
                  tolerance > 0;
  if (!ok) {
    throw PlanningError(ErrorCode::kConfig, "invalid planner weights");
  }
}

const char * to_string(SolveStatus status)
{
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kMaxIter:
      return "MaxIter";
    case SolveStatus::kInfeasible:
      return "Infeasible";
  }
  return "Unknown";
}

std::vector<SpaceState> rollout(
  const SpaceState & init, std::span<const double> u, const PlannerWeights & weights)
{
  std::vector<SpaceState> out{init};
  out.reserve(u.size() + 1);
  for (double uk : u) {
    out.push_back(propagate(out.back(), uk, weights.ds, weights.l_r, weights.eps_guard));
  }
  return out;
}

std::vector<double> rollout_jacobian(
  const SpaceState & init, std::span<const double> u, const PlannerWeights & weights)
{
  PlannerWeights w = weights;
  w.n = static_cast<int>(u.size()) + 1;
  Corridor unused;
  ShootingProblem problem(unused, {}, w, init);
  Trajectory traj;
  if (!roll(init, u, w, traj)) {
    throw PlanningError(ErrorCode::kSingularityGuard, "rollout hit the singularity guard");
  }
  const Eigen::MatrixXd jd = problem.jacobian(u, traj);
  std::vector<double> out(static_cast<std::size_t>(jd.size()));
  for (Eigen::Index r = 0; r < jd.rows(); ++r) {
    for (Eigen::Index c = 0; c < jd.cols(); ++c) {
      out[static_cast<std::size_t>(r * jd.cols() + c)] = jd(r, c);
    }
  }
  return out;
}

CostEvaluation evaluate_cost(
  const ControlSequence & controls, const Corridor & corridor,
  std::span<const LateralPrediction> dynamic, const PlannerWeights & weights,
  const SpaceState & init)
{
  const auto m = static_cast<std::size_t>(weights.n - 1);
  if (controls.u.size() != m || controls.alpha.size() != m ||
      corridor.n != weights.n) {
    throw PlanningError(ErrorCode::kDomainError, "control or corridor length does not match n");
  }
  ShootingProblem problem(corridor, dynamic, weights, init);
  Trajectory traj;
  Terms terms;
  if (!problem.objective(controls.u, controls.alpha, traj, terms)) {
    throw PlanningError(ErrorCode::kSingularityGuard, "rollout hit the singularity guard");
  }
  CostEvaluation out;
  out.cost = terms.value;
  out.gradient.assign(2 * m, 0.0);
  problem.adjoint(controls.u, traj, terms.stage_d1, terms.control_d1, std::span(out.gradient).first(m));
  for (std::size_t j = 0; j < m; ++j) {
    out.gradient[m + j] = 2.0 * weights.lambda_alpha * controls.alpha[j];
  }
  return out;
}

std::vector<ActuationBounds> actuation_bounds(
  std::span<const double> heading_deltas, const PlannerWeights & weights)
{
  const auto m = static_cast<std::size_t>(weights.n - 1);
  std::vector<ActuationBounds> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double delta = j < heading_deltas.size() ? heading_deltas[j] : 0.0;
    out[j] = curvature_bounds(
      delta, weights.ds, weights.l_r, weights.l_f, weights.delta_min, weights.delta_max);
  }
  return out;
}

PlannerSolution solve(
  const Corridor & corridor, std::span<const LateralPrediction> dynamic,
  const PlannerWeights & weights, const SpaceState & init, std::span<const double> heading_deltas,
  const WarmStart * warm)
{
  const auto t_start = std::chrono::steady_clock::now();
  weights.validate();
  if (corridor.n != weights.n) {
    throw PlanningError(ErrorCode::kDomainError, "corridor length does not match the horizon");
  }
  const auto m = static_cast<std::size_t>(weights.n - 1);
  const auto mi = static_cast<Eigen::Index>(m);

  PlannerSolution sol;
  sol.control_bounds = actuation_bounds(heading_deltas, weights);

  Eigen::VectorXd lo(2 * mi);
  Eigen::VectorXd hi(2 * mi);
  for (std::size_t j = 0; j < m; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    lo(jj) = sol.control_bounds[j].lower;
    hi(jj) = sol.control_bounds[j].upper;
    lo(mi + jj) = 0.0;
    hi(mi + jj) = weights.alpha_max;
  }

  ShootingProblem problem(corridor, dynamic, weights, init);
  Multipliers mult;
  mult.lower.assign(m, 0.0);
  mult.upper.assign(m, 0.0);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * mi).cwiseMax(lo).cwiseMin(hi);
  Trajectory traj;
  if (warm && warm->controls.u.size() == m && warm->controls.alpha.size() == m) {
    Eigen::VectorXd cand(2 * mi);
    for (std::size_t j = 0; j < m; ++j) {
      cand(static_cast<Eigen::Index>(j)) = warm->controls.u[j];
      cand(mi + static_cast<Eigen::Index>(j)) = warm->controls.alpha[j];
    }
    cand = cand.cwiseMax(lo).cwiseMin(hi);
    if (roll(init, std::span<const double>(cand.data(), m), weights, traj)) {
      z = cand;
      if (warm->mu_lower.size() == m && warm->mu_upper.size() == m && warm->penalty > 0.0) {
        mult.lower = warm->mu_lower;
        mult.upper = warm->mu_upper;
        mult.penalty = warm->penalty;
      }
    }
  }

  auto finish = [&](SolveStatus status, int iterations) {
    sol.iterations = iterations;
    std::vector<double> u(z.data(), z.data() + m);
    sol.warm_start.controls.u = u;
    sol.warm_start.controls.alpha.assign(z.data() + m, z.data() + 2 * m);
    sol.warm_start.mu_lower = mult.lower;
    sol.warm_start.mu_upper = mult.upper;
    sol.warm_start.penalty = mult.penalty;

    if (!roll(init, u, weights, traj)) {
      // Only reachable when the zero control already violates the guard.
      traj.d.assign(m + 1, init.d);
      traj.phi.assign(m + 1, init.phi);
      status = SolveStatus::kInfeasible;
    }
    sol.path.resize(m + 1);
    sol.phi = traj.phi;
    sol.max_violation = 0.0;
    std::vector<double> alpha(m, 0.0);
    for (std::size_t k = 0; k <= m; ++k) {
      sol.path[k] = {corridor.station(static_cast<int>(k)), traj.d[k]};
      if (k == 0) {
        continue;
      }
      const double excess =
        std::max({0.0, corridor.d_lb[k] - traj.d[k], traj.d[k] - corridor.d_ub[k]});
      sol.max_violation = std::max(sol.max_violation, excess);
      // Smallest slack that relaxes the bound enough; equals the optimizer's
      // alpha at convergence up to the feasibility tolerance.
      alpha[k - 1] = excess > kFeasibilityTolerance ? std::min(excess, weights.alpha_max) : 0.0;
    }
    sol.controls.u = std::move(u);
    sol.controls.alpha = std::move(alpha);
    if (sol.max_violation > weights.alpha_max + 1e-6) {
      status = SolveStatus::kInfeasible;
    }
    sol.status = status;
    Terms terms;
    sol.cost = problem.objective(sol.controls.u, sol.controls.alpha, traj, terms)
                 ? terms.value
                 : std::numeric_limits<double>::infinity();
    sol.solve_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return sol;
  };

  // Quick rejections: measured state or some cell outside every relaxation.
  if (init.d < corridor.d_lb[0] - weights.alpha_max - 1e-9 ||
      init.d > corridor.d_ub[0] + weights.alpha_max + 1e-9) {
    return finish(SolveStatus::kInfeasible, 0);
  }
  for (int k = 1; k < corridor.n; ++k) {
    if (corridor.d_lb[k] - corridor.d_ub[k] > 2.0 * weights.alpha_max) {
      return finish(SolveStatus::kInfeasible, 0);
    }
  }
  if (!roll(init, std::span<const double>(z.data(), m), weights, traj)) {
    return finish(SolveStatus::kInfeasible, 0);
  }

  // The hard-bound problem is tried first with alpha pinned at zero; the
  // slack only enters when that problem has no feasible point.
  int iterations = 0;
  const Eigen::VectorXd hi_hard = (Eigen::VectorXd(2 * mi) << hi.head(mi), Eigen::VectorXd::Zero(mi)).finished();
  Eigen::VectorXd z_hard = z;
  z_hard.tail(mi).setZero();
  Multipliers mult_hard = mult;
  const auto hard = run_augmented_lagrangian(
    problem, init, lo, hi_hard, z_hard, mult_hard, iterations, weights.max_iterations, true);
  if (hard == Outcome::kConverged) {
    z = z_hard;
    mult = mult_hard;
    return finish(SolveStatus::kOptimal, iterations);
  }
  if (hard == Outcome::kBudget) {
    z = z_hard;
    mult = mult_hard;
    return finish(SolveStatus::kMaxIter, iterations);
  }
  z.head(mi) = z_hard.head(mi);
  const auto relaxed = run_augmented_lagrangian(
    problem, init, lo, hi, z, mult, iterations, iterations + weights.max_iterations, false);
  return finish(relaxed == Outcome::kConverged ? SolveStatus::kOptimal : SolveStatus::kMaxIter, iterations);
}

WarmStart shift_warm_start(const WarmStart & previous, int steps)
{
  WarmStart out = previous;
  auto shift = [steps](std::vector<double> & v) {
    if (v.empty() || steps <= 0) {
      return;
    }
    const auto k = std::min(static_cast<std::size_t>(steps), v.size());
    const double last = v.back();
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    v.resize(v.size() + k, last);
  };
  shift(out.controls.u);
  shift(out.controls.alpha);
  shift(out.mu_lower);
  shift(out.mu_upper);
  return out;
}

}  // namespace fcp
