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

#ifndef SMOOTHOL_REGRET_HPP_
#define SMOOTHOL_REGRET_HPP_

#include <optional>
#include <span>
#include <vector>

#include "smoothol/competitive.hpp"
#include "smoothol/costs.hpp"
#include "smoothol/geometry.hpp"
#include "smoothol/solvers.hpp"

namespace smoothol {

enum class GridMode { kStandard, kLookahead };

/// Geometric step-size grid plus the Hedge rate.
///
///   standard:   eta_i = 2^(i-1) sqrt(D^2 / (T (G^2 + 2G))),  beta = 2 / ((2G + 1) D) sqrt(2 / (5T))
///   lookahead:  eta_i = 2^(i-1) sqrt(D^2 / T),                beta = sqrt(2 / T) / D
///
/// with N = ceil(log2(1 + 2T) / 2) + 1 experts in both modes.
struct StepGrid {
  std::vector<double> etas;
  double beta = 0.0;
  int T = 0;
  double D = 0.0;
  std::optional<double> G;
  GridMode mode = GridMode::kStandard;
};

StepGrid build_step_grid(int T, double D, std::optional<double> G, GridMode mode);
int grid_size(int T);

/// Weights are indexed by expert position, so grids with repeated step sizes
/// are allowed.
using WeightVector = std::vector<double>;

/// w_i = C / (i (i + 1)) with C = 1 + 1/N.
WeightVector initial_weights(int n);

/// <grad, expert_now - x_t> + ||expert_now - expert_prev||.
double meta_loss(const Point& grad_at_x, const Point& x_t, const Point& expert_now, const Point& expert_prev);

/// w'_i proportional to w_i exp(-beta loss_i), evaluated after shifting the
/// losses by their minimum.
WeightVector hedge_update(const WeightVector& w, std::span<const double> losses, double beta);

/// Round-by-round cost oracle that only answers for a round once the
/// learner has committed its decision for it.
class CostStream {
 public:
  explicit CostStream(std::vector<CostFunction> costs);

  std::size_t horizon() const { return costs_.size(); }
  int dimension() const { return costs_.front().dimension(); }
  /// Number of rounds with a committed decision.
  std::size_t committed() const { return decisions_.size(); }

  /// Commits x for round t; rounds must be committed in order.
  void commit(std::size_t t, const Point& x);
  /// Gradient (subgradient) of f_t at the committed decision. Throws
  /// std::logic_error if round t is not committed yet.
  Point gradient(std::size_t t) const;
  double value(std::size_t t) const;

  /// Full cost sequence, for scoring after the run.
  std::span<const CostFunction> costs() const { return costs_; }

 private:
  void require_committed(std::size_t t) const;

  std::vector<CostFunction> costs_;
  std::vector<Point> decisions_;
};

/// Hedge over projected online gradient descent experts, l2 switching cost.
/// The start x_0 (default: the origin) is also every expert's x_0; experts
/// play the domain center in round 1.
RunTrace sader_run(CostStream& stream, const Domain& domain, const StepGrid& grid,
                   const std::optional<Point>& start = std::nullopt);

struct FixedPointSettings {
  int max_iterations = 50;
  /// Stop once ||F(w) - w||_1 is at most this.
  double tolerance = 1e-10;
  /// Skip the iteration: w_t = hedge(w_{t-1}, losses at x = sum w_{t-1} x^eta).
  bool single_pass = false;

  void validate() const;
};

/// Hedge over proximal experts that see f_t before committing. Each round's
/// weights solve w = hedge(w_{t-1}, l(w)), where l depends on the gradient at
/// x = sum w x^eta; the equation is solved by damped fixed-point iteration.
RunTrace lookahead_sader_run(std::span<const CostFunction> costs, const Domain& domain, const StepGrid& grid,
                             const FixedPointSettings& fp = {}, const SolverSettings& solver = {},
                             const std::optional<Point>& start = std::nullopt);

/// sum_t ||u_t - u_{t-1}|| with u_0 = start.
double path_length(std::span<const Point> seq, const Point& start);

/// sum_t f_t(x_t) + m(x_t, x_{t-1}) - sum_t f_t(u_t), minus the comparator's
/// own switching cost when `include_comparator_switching` is set.
double dynamic_regret_switching(const RunTrace& trace, std::span<const Point> comparators, const Point& u0,
                                std::span<const CostFunction> costs, const SwitchingCost& m,
                                bool include_comparator_switching);

/// floor(log2(1 + 2 P / D) / 2) + 1.
int path_index(double D, double P);

double bound_theorem4(int T, double D, double G, double P);
double bound_theorem5(int T, double D, double P);
/// D^2 / (2 eta) + (D / eta) P + eta T (G^2 / 2 + G).
double expert_bound_lemma2(double eta, int T, double D, double G, double P);
/// D^2 / (2 eta) + (D / eta) P + eta T / 2.
double expert_bound_lemma5(double eta, int T, double D, double P);
/// Step size that minimizes the per-expert bound for path length P.
double optimal_eta(GridMode mode, int T, double D, std::optional<double> G, double P);
/// True if some grid step satisfies eta_k <= eta <= 2 eta_k (relative
/// rounding slack 1e-12).
bool grid_covers(const StepGrid& grid, double eta);

// Audits over recorded traces.

/// ||w_t - w_{t-1}||_1 for every consecutive pair of recorded weights.
std::vector<double> weight_steps(const TraceExtras& extras);

/// Per expert: sum_t (s_t(x_t^eta) + ||x_t^eta - x_{t-1}^eta||) - sum_t s_t(u_t),
/// with s_t(x) = <g_t, x - x_t> for standard traces and s_t = f_t for
/// lookahead traces.
std::vector<double> expert_regrets(const RunTrace& trace, std::span<const CostFunction> costs,
                                   std::span<const Point> comparators);

/// Per expert eta': (1/beta) ln(1/w_0) - (1/(2 beta)) sum ||w_t - w_{t-1}||_1^2
/// minus sum_t (<w_t, l_t> - l_t^eta'). Nonnegative when the Hedge
/// telescoping inequality holds. Lookahead traces only.
std::vector<double> telescoping_slack(const TraceExtras& extras);

}  // namespace smoothol

#endif  // SMOOTHOL_REGRET_HPP_
