// Copyright 2026 The Smoothol Authors.
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

#include "smoothol/solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace smoothol {

namespace {

constexpr double kFeasibilityTol = 1e-9;

void require_feasible(const Domain& domain, const Point& p, const char* what) {
  check_point(p, what);
  if (p.size() != domain.dimension()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  if (!domain.contains(p, kFeasibilityTol)) throw std::invalid_argument(std::string(what) + " is not feasible");
}

SolveResult projected_gradient_general_quadratic(const CostFunction& f, const Point& anchor, double weight,
                                                 const Domain& domain, const SolverSettings& settings) {
  const Eigen::MatrixXd& h = f.curvature();
  const Point& v = f.minimizer();
  const double step = 1.0 / (f.max_curvature() + weight);
  SolveResult out{domain.project(anchor), false, 0};
  for (int k = 1; k <= settings.max_iterations; ++k) {
    const Point grad = h * (out.point - v) + weight * (out.point - anchor);
    Point next = domain.project(out.point - step * grad);
    const double moved = (next - out.point).norm();
    out.point = std::move(next);
    out.iterations = k;
    if (moved <= settings.tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

// f(x) = alpha ||x - v|| + (w/2) ||x - a||^2 over the domain.
SolveResult prox_polyhedral(const CostFunction& f, const Point& anchor, double weight, const Domain& domain,
                            const SolverSettings& settings) {
  const double alpha = f.parameter();
  const Point& v = f.minimizer();
  // x* = v iff v is feasible and dist(w (a - v), N(v)) <= alpha.
  if (domain.contains(v, 0.0) && domain.distance_to_normal_cone(v, weight * (anchor - v)) <= alpha) {
    return SolveResult{v, true, 0};
  }
  // Majorize alpha ||x - v|| at x_k by the isotropic quadratic
  // alpha / (2 rho_k) ||x - v||^2 + alpha rho_k / 2; its constrained
  // minimizer is a projection of a weighted mean.
  SolveResult out{domain.project(anchor), false, 0};
  double previous_move = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= settings.max_iterations; ++k) {
    const double rho = (out.point - v).norm();
    if (rho == 0.0) {
      // Landed on the kink although it is not optimal; restart from the anchor side.
      out.point = domain.project(0.5 * (out.point + anchor));
      if ((out.point - v).norm() == 0.0) break;
      continue;
    }
    Point next = domain.project((alpha * v + weight * rho * anchor) / (alpha + weight * rho));
    const double moved = (next - out.point).norm();
    out.point = std::move(next);
    out.iterations = k;
    // Linear convergence: the remaining error is about moved * q / (1 - q).
    const double q = previous_move > 0.0 && std::isfinite(previous_move) ? std::min(moved / previous_move, 0.999999)
                                                                          : 0.0;
    if (moved <= settings.tolerance * (1.0 - q)) {
      out.converged = true;
      break;
    }
    previous_move = moved;
  }
  return out;
}

}  // namespace

void SolverSettings::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("solver max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be > 0");
  if (!(base_step >= 0.0) || !std::isfinite(base_step)) throw std::invalid_argument("solver base_step must be >= 0");
}

Point minimize_cost(const CostFunction& f, const Domain& domain, const SolverSettings& settings) {
  if (f.dimension() != domain.dimension()) throw std::invalid_argument("minimize_cost: dimension mismatch");
  const Point& v = f.minimizer();
  if (f.family() != CostFamily::kGeneralQuadratic || domain.contains(v, 0.0)) return domain.project(v);
  // Anisotropic curvature: the constrained minimizer is not the projection of v.
  settings.validate();
  return projected_gradient_general_quadratic(f, domain.project(v), 0.0, domain, settings).point;
}

SolveResult prox_step(const CostFunction& f, const Point& anchor, double weight, const SwitchingCost& m,
                      const Domain& domain, const SolverSettings& settings) {
  if (m.kind != SwitchingKind::kHalfSquaredL2) {
    throw std::invalid_argument("prox_step: only the half-squared-l2 proximal term is supported");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) throw std::invalid_argument("prox_step: weight must be > 0");
  if (f.dimension() != domain.dimension()) throw std::invalid_argument("prox_step: dimension mismatch");
  require_feasible(domain, anchor, "prox_step anchor");
  settings.validate();
  switch (f.family()) {
    case CostFamily::kQuadratic: {
      const double lambda = f.parameter();
      return SolveResult{domain.project((lambda * f.minimizer() + weight * anchor) / (lambda + weight)), true, 0};
    }
    case CostFamily::kGeneralQuadratic:
      return projected_gradient_general_quadratic(f, anchor, weight, domain, settings);
    case CostFamily::kPolyhedralNorm:
      return prox_polyhedral(f, anchor, weight, domain, settings);
  }
  return SolveResult{anchor, false, 0};
}

SolveResult prox_step_iterative(const CostFunction& f, const Point& anchor, double weight, const Domain& domain,
                                const SolverSettings& settings) {
  if (!(weight > 0.0)) throw std::invalid_argument("prox_step_iterative: weight must be > 0");
  require_feasible(domain, anchor, "prox_step anchor");
  Objective obj;
  obj.value = [&](const Point& x) { return f.value(x) + 0.5 * weight * (x - anchor).squaredNorm(); };
  obj.subgradient = [&](const Point& x) -> Point { return f.subgradient(x) + weight * (x - anchor); };
  obj.gradient_bound = gradient_bound(f, domain) + weight * domain.diameter();
  return projected_subgradient(obj, domain, anchor, settings);
}

SolveResult projected_subgradient(const Objective& objective, const Domain& domain, const Point& init,
                                  const SolverSettings& settings) {
  settings.validate();
  require_feasible(domain, init, "projected_subgradient init");
  Point x = domain.project(init);
  SolveResult best{x, false, 0};
  double best_value = objective.value(x);

  double base = settings.base_step;
  if (base == 0.0) {
    double g_loc = objective.gradient_bound;
    if (!(g_loc > 0.0)) g_loc = objective.subgradient(x).norm();
    if (!(g_loc > 0.0)) {
      best.converged = true;  // zero subgradient at init: already optimal
      return best;
    }
    base = domain.diameter() / g_loc;
    if (!(base > 0.0)) {
      best.converged = true;  // single-point domain
      return best;
    }
  }

  for (int k = 1; k <= settings.max_iterations; ++k) {
    const Point g = objective.subgradient(x);
    best.iterations = k;
    if (g.squaredNorm() == 0.0) {
      best.converged = true;
      if (objective.value(x) <= best_value) best.point = x;
      break;
    }
    const double step = settings.step_rule == StepRule::kDiminishing ? base / std::sqrt(static_cast<double>(k)) : base;
    Point next = domain.project(x - step * g);
    const double moved = (next - x).norm();
    x = std::move(next);
    const double val = objective.value(x);
    if (val <= best_value) {
      best_value = val;
      best.point = x;
    }
    if (moved <= settings.tolerance) {
      best.converged = true;
      break;
    }
  }
  return best;
}

}  // namespace smoothol
