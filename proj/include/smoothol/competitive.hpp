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

#ifndef SMOOTHOL_COMPETITIVE_HPP_
#define SMOOTHOL_COMPETITIVE_HPP_

#include <optional>
#include <span>
#include <vector>

#include "smoothol/costs.hpp"
#include "smoothol/geometry.hpp"
#include "smoothol/solvers.hpp"

namespace smoothol {

/// Per-round record kept by the expert-aggregation runs.
struct TraceExtras {
  bool lookahead = false;
  std::vector<double> etas;
  double beta = 0.0;
  /// Weights before the first round: w_1 in the standard setting, w_0 in the
  /// lookahead setting.
  std::vector<double> initial_weights;
  /// weights[t] are the weights that formed decisions[t].
  std::vector<std::vector<double>> weights;
  /// Weights after the last update (standard setting only; w_{T+1}).
  std::vector<double> final_weights;
  /// expert_points[t][i] is expert i's iterate at round t; the iterate before
  /// the first round is the trace's start for every expert.
  std::vector<std::vector<Point>> expert_points;
  /// meta_losses[t][i] is the loss that fed the weight update of round t.
  std::vector<std::vector<double>> meta_losses;
  /// Gradient of the round's cost at decisions[t].
  std::vector<Point> gradients;
  /// Fixed-point iterations used per round (lookahead only).
  std::vector<int> fixed_point_iterations;
  int fixed_point_failures = 0;
};

/// Full record of one online run.
struct RunTrace {
  Point start;
  std::vector<Point> decisions;
  std::vector<double> hitting;
  std::vector<double> switching;
  double total = 0.0;
  SwitchingCost switching_cost;
  /// Set when any inner solve ran out of iterations.
  bool solver_warning = false;
  std::optional<TraceExtras> extras;

  std::size_t rounds() const { return decisions.size(); }
};

/// Fills hitting/switching/total of `trace` from its decisions and start.
void fill_costs(RunTrace& trace, std::span<const CostFunction> costs);

/// x_t = argmin_{x in X} f_t(x), ignoring the switching cost.
RunTrace run_naive(std::span<const CostFunction> costs, const Domain& domain, const Point& start,
                   const SwitchingCost& m, const SolverSettings& settings = {});

/// x_t = argmin_{x in X} f_t(x) + (gamma / 2) ||x - x_{t-1}||^2, with the
/// half-squared-l2 switching cost charged.
RunTrace run_greedy(std::span<const CostFunction> costs, const Domain& domain, const Point& start, double gamma,
                    const SolverSettings& settings = {});

/// lambda / (lambda + sqrt(lambda)).
double recommended_gamma(double lambda);

/// alg / opt, with 0/0 -> 1 and x/0 -> +infinity.
double competitive_ratio(double alg_total, double opt_total);

/// Guaranteed competitive ratios of the two per-round rules.
double naive_ratio_bound_polyhedral(double alpha);  // max(1, 2 / alpha), l2 switching
double naive_ratio_bound_quadratic_growth(double lambda);  // 1 + 4 / lambda, half-squared-l2
double greedy_ratio_bound(double lambda);  // 1 + 2 / sqrt(lambda) at the recommended gamma

}  // namespace smoothol

#endif  // SMOOTHOL_COMPETITIVE_HPP_
