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

#ifndef SMOOTHOL_SOLVERS_HPP_
#define SMOOTHOL_SOLVERS_HPP_

#include <functional>

#include "smoothol/costs.hpp"
#include "smoothol/geometry.hpp"

namespace smoothol {

enum class StepRule {
  kDiminishing,  // s / sqrt(k)
  kConstant,     // s
};

struct SolverSettings {
  int max_iterations = 10000;
  /// Stop once successive iterates are within this l2 distance.
  double tolerance = 1e-8;
  /// Base step s. Zero means "derive it": D / G_loc for the diminishing rule.
  double base_step = 0.0;
  StepRule step_rule = StepRule::kDiminishing;

  void validate() const;
};

/// Result of an inner solve. Non-convergence is reported here and never thrown.
struct SolveResult {
  Point point;
  bool converged = true;
  int iterations = 0;
};

/// Objective oracle for the generic solver.
struct Objective {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> subgradient;
  /// Bound on ||subgradient|| over the domain; <= 0 means unknown.
  double gradient_bound = 0.0;
};

/// argmin over the domain of f. Exact (projection of v) for the isotropic
/// families and for general-quadratic costs whose minimizer is feasible.
Point minimize_cost(const CostFunction& f, const Domain& domain, const SolverSettings& settings = {});

/// argmin_{x in domain} f(x) + (weight / 2) ||x - anchor||^2.
///
/// quadratic:          closed form, project((lambda v + weight anchor) / (lambda + weight))
/// general-quadratic:  projected gradient with constant step 1 / (lambda_max + weight)
/// polyhedral-norm:    exact kink test at v, otherwise majorize-minimize iterations
///                     whose inner step is a closed-form projection
///
/// `m` must be the half-squared-l2 switching cost.
SolveResult prox_step(const CostFunction& f, const Point& anchor, double weight, const SwitchingCost& m,
                      const Domain& domain, const SolverSettings& settings = {});

/// The same objective as `prox_step`, always solved by `projected_subgradient`.
/// Kept separate so tests can cross-check the closed forms against it.
SolveResult prox_step_iterative(const CostFunction& f, const Point& anchor, double weight, const Domain& domain,
                                const SolverSettings& settings = {});

/// Projected subgradient descent from a feasible `init`, returning the best
/// iterate seen.
SolveResult projected_subgradient(const Objective& objective, const Domain& domain, const Point& init,
                                  const SolverSettings& settings = {});

}  // namespace smoothol

#endif  // SMOOTHOL_SOLVERS_HPP_
