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

#include "smoothol/regret.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smoothol {

namespace {

double l1_distance(const WeightVector& a, const WeightVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

Point combine(const WeightVector& w, const std::vector<Point>& points) {
  Point x = Point::Zero(points.front().size());
  for (std::size_t i = 0; i < w.size(); ++i) x += w[i] * points[i];
  return x;
}

Point resolve_start(const Domain& domain, const std::optional<Point>& start) {
  Point s = start ? *start : Point::Zero(domain.dimension());
  check_point(s, "start");
  if (s.size() != domain.dimension()) throw std::invalid_argument("start: dimension mismatch");
  if (!domain.contains(s, 1e-9)) {
    throw std::invalid_argument(start ? "start is not feasible"
                                      : "the origin is not feasible; supply an explicit start");
  }
  return s;
}

void check_grid(const StepGrid& grid) {
  if (grid.etas.empty()) throw std::invalid_argument("step grid is empty");
  for (double eta : grid.etas) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("step sizes must be finite and > 0");
  }
  if (!(grid.beta > 0.0) || !std::isfinite(grid.beta)) throw std::invalid_argument("beta must be finite and > 0");
}

}  // namespace

int grid_size(int T) {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  return static_cast<int>(std::ceil(0.5 * std::log2(1.0 + 2.0 * T))) + 1;
}

StepGrid build_step_grid(int T, double D, std::optional<double> G, GridMode mode) {
  if (T < 1) throw std::invalid_argument("build_step_grid: T must be >= 1");
  if (!(D > 0.0) || !std::isfinite(D)) throw std::invalid_argument("build_step_grid: D must be > 0");
  StepGrid grid;
  grid.T = T;
  grid.D = D;
  grid.mode = mode;
  const int n = grid_size(T);
  double base = 0.0;
  if (mode == GridMode::kStandard) {
    if (!G) throw std::invalid_argument("build_step_grid: standard mode requires G");
    if (!(*G > 0.0) || !std::isfinite(*G)) throw std::invalid_argument("build_step_grid: G must be > 0");
    grid.G = G;
    const double g = *G;
    base = std::sqrt(D * D / (T * (g * g + 2.0 * g)));
    grid.beta = 2.0 / ((2.0 * g + 1.0) * D) * std::sqrt(2.0 / (5.0 * T));
  } else {
    grid.G = G;
    base = std::sqrt(D * D / T);
    grid.beta = std::sqrt(2.0 / T) / D;
  }
  grid.etas.reserve(n);
  for (int i = 0; i < n; ++i) grid.etas.push_back(std::ldexp(base, i));
  return grid;
}

WeightVector initial_weights(int n) {
  if (n < 1) throw std::invalid_argument("initial_weights: N must be >= 1");
  const double c = 1.0 + 1.0 / n;
  WeightVector w(n);
  for (int i = 1; i <= n; ++i) w[i - 1] = c / (static_cast<double>(i) * (i + 1));
  return w;
}

double meta_loss(const Point& grad_at_x, const Point& x_t, const Point& expert_now, const Point& expert_prev) {
  if (grad_at_x.size() != x_t.size() || x_t.size() != expert_now.size() || expert_now.size() != expert_prev.size()) {
    throw std::invalid_argument("meta_loss: dimension mismatch");
  }
  return grad_at_x.dot(expert_now - x_t) + (expert_now - expert_prev).norm();
}

WeightVector hedge_update(const WeightVector& w, std::span<const double> losses, double beta) {
  if (w.empty()) throw std::invalid_argument("hedge_update: empty weights");
  if (losses.size() != w.size()) throw std::invalid_argument("hedge_update: loss count mismatch");
  if (!(beta > 0.0)) throw std::invalid_argument("hedge_update: beta must be > 0");
  const double shift = *std::min_element(losses.begin(), losses.end());
  WeightVector out(w.size());
  double z = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = w[i] * std::exp(-beta * (losses[i] - shift));
    z += out[i];
  }
  if (!(z > 0.0) || !std::isfinite(z)) throw std::runtime_error("hedge_update: degenerate normalization");
  for (double& v : out) v /= z;
  return out;
}

CostStream::CostStream(std::vector<CostFunction> costs) : costs_(std::move(costs)) {
  if (costs_.empty()) throw std::invalid_argument("CostStream: cost sequence is empty");
  decisions_.reserve(costs_.size());
}

void CostStream::commit(std::size_t t, const Point& x) {
  if (t != decisions_.size()) {
    throw std::logic_error("CostStream: round " + std::to_string(t) + " committed out of order");
  }
  if (t >= costs_.size()) throw std::logic_error("CostStream: commit past the horizon");
  decisions_.push_back(x);
}

void CostStream::require_committed(std::size_t t) const {
  if (t >= decisions_.size()) {
    throw std::logic_error("CostStream: feedback for round " + std::to_string(t) + " requested before commit");
  }
}

Point CostStream::gradient(std::size_t t) const {
  require_committed(t);
  return costs_[t].subgradient(decisions_[t]);
}

double CostStream::value(std::size_t t) const {
  require_committed(t);
  return costs_[t].value(decisions_[t]);
}

RunTrace sader_run(CostStream& stream, const Domain& domain, const StepGrid& grid, const std::optional<Point>& start) {
  if (grid.mode != GridMode::kStandard) throw std::invalid_argument("sader_run: grid must be in standard mode");
  check_grid(grid);
  if (stream.dimension() != domain.dimension()) throw std::invalid_argument("sader_run: dimension mismatch");
  if (stream.committed() != 0) throw std::invalid_argument("sader_run: stream already in use");

  const std::size_t T = stream.horizon();
  const std::size_t n = grid.etas.size();
  RunTrace trace;
  trace.start = resolve_start(domain, start);
  trace.switching_cost = SwitchingCost{SwitchingKind::kL2};
  TraceExtras ex;
  ex.lookahead = false;
  ex.etas = grid.etas;
  ex.beta = grid.beta;
  ex.initial_weights = initial_weights(static_cast<int>(n));

  std::vector<Point> experts(n, domain.center());
  std::vector<Point> previous(n, trace.start);
  WeightVector w = ex.initial_weights;
  std::vector<double> losses(n);
  for (std::size_t t = 0; t < T; ++t) {
    const Point x = combine(w, experts);
    stream.commit(t, x);
    const Point g = stream.gradient(t);
    for (std::size_t i = 0; i < n; ++i) losses[i] = meta_loss(g, x, experts[i], previous[i]);

    trace.decisions.push_back(x);
    ex.weights.push_back(w);
    ex.expert_points.push_back(experts);
    ex.meta_losses.push_back(losses);
    ex.gradients.push_back(g);

    w = hedge_update(w, losses, grid.beta);
    previous = experts;
    for (std::size_t i = 0; i < n; ++i) experts[i] = domain.project(experts[i] - grid.etas[i] * g);
  }
  ex.final_weights = w;
  trace.extras = std::move(ex);
  fill_costs(trace, stream.costs());
  return trace;
}

void FixedPointSettings::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("fixed-point max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("fixed-point tolerance must be > 0");
}

RunTrace lookahead_sader_run(std::span<const CostFunction> costs, const Domain& domain, const StepGrid& grid,
                             const FixedPointSettings& fp, const SolverSettings& solver,
                             const std::optional<Point>& start) {
  if (grid.mode != GridMode::kLookahead) throw std::invalid_argument("lookahead_sader_run: grid must be in lookahead mode");
  check_grid(grid);
  fp.validate();
  if (costs.empty()) throw std::invalid_argument("lookahead_sader_run: cost sequence is empty");
  for (const CostFunction& f : costs) {
    if (f.dimension() != domain.dimension()) throw std::invalid_argument("lookahead_sader_run: dimension mismatch");
  }

  const std::size_t n = grid.etas.size();
  const SwitchingCost prox_kind{SwitchingKind::kHalfSquaredL2};
  RunTrace trace;
  trace.start = resolve_start(domain, start);
  trace.switching_cost = SwitchingCost{SwitchingKind::kL2};
  TraceExtras ex;
  ex.lookahead = true;
  ex.etas = grid.etas;
  ex.beta = grid.beta;
  ex.initial_weights = initial_weights(static_cast<int>(n));

  std::vector<Point> previous(n, trace.start);
  std::vector<Point> experts(n);
  std::vector<double> moves(n);
  WeightVector w_prev = ex.initial_weights;

  for (const CostFunction& f : costs) {
    for (std::size_t i = 0; i < n; ++i) {
      SolveResult r = prox_step(f, previous[i], 1.0 / grid.etas[i], prox_kind, domain, solver);
      trace.solver_warning = trace.solver_warning || !r.converged;
      experts[i] = std::move(r.point);
      moves[i] = (experts[i] - previous[i]).norm();
    }

    // F(w) = hedge(w_{t-1}, l(w)); l(w) uses the gradient at sum w x^eta.
    std::vector<double> losses(n);
    auto apply = [&](const WeightVector& w, std::vector<double>& out_losses) {
      const Point x = combine(w, experts);
      const Point g = f.subgradient(x);
      for (std::size_t i = 0; i < n; ++i) out_losses[i] = g.dot(experts[i] - x) + moves[i];
      return hedge_update(w_prev, out_losses, grid.beta);
    };

    WeightVector w = w_prev;
    WeightVector fw = apply(w, losses);
    int iterations = 1;
    bool converged = fp.single_pass;
    if (!fp.single_pass) {
      double residual = l1_distance(fw, w);
      double theta = 1.0;
      std::vector<double> cand_losses(n);
      while (true) {
        if (residual <= fp.tolerance) {
          converged = true;
          break;
        }
        if (iterations >= fp.max_iterations) break;
        WeightVector cand(n);
        for (std::size_t i = 0; i < n; ++i) cand[i] = (1.0 - theta) * w[i] + theta * fw[i];
        WeightVector fc = apply(cand, cand_losses);
        ++iterations;
        const double rc = l1_distance(fc, cand);
        if (rc < residual) {
          w = std::move(cand);
          fw = std::move(fc);
          losses = cand_losses;
          residual = rc;
          theta = std::min(1.0, 1.5 * theta);
        } else {
          theta *= 0.5;
        }
      }
    }
    if (!converged) ++ex.fixed_point_failures;

    // fw is an exact Hedge output for the recorded losses.
    const Point x = combine(fw, experts);
    trace.decisions.push_back(x);
    ex.weights.push_back(fw);
    ex.expert_points.push_back(experts);
    ex.meta_losses.push_back(losses);
    ex.gradients.push_back(f.subgradient(x));
    ex.fixed_point_iterations.push_back(iterations);
    w_prev = std::move(fw);
    previous = experts;
  }
  trace.extras = std::move(ex);
  fill_costs(trace, costs);
  return trace;
}

double path_length(std::span<const Point> seq, const Point& start) {
  if (seq.empty()) throw std::invalid_argument("path_length: empty sequence");
  double total = 0.0;
  const Point* prev = &start;
  for (const Point& u : seq) {
    if (u.size() != prev->size()) throw std::invalid_argument("path_length: dimension mismatch");
    total += (u - *prev).norm();
    prev = &u;
  }
  return total;
}

double dynamic_regret_switching(const RunTrace& trace, std::span<const Point> comparators, const Point& u0,
                                std::span<const CostFunction> costs, const SwitchingCost& m,
                                bool include_comparator_switching) {
  const std::size_t T = trace.decisions.size();
  if (comparators.size() != T || costs.size() != T) throw std::invalid_argument("dynamic_regret: length mismatch");
  double learner = 0.0;
  double comparator = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const Point& x_prev = t == 0 ? trace.start : trace.decisions[t - 1];
    learner += costs[t].value(trace.decisions[t]) + m(trace.decisions[t], x_prev);
    comparator += costs[t].value(comparators[t]);
    if (include_comparator_switching) {
      const Point& u_prev = t == 0 ? u0 : comparators[t - 1];
      comparator += m(comparators[t], u_prev);
    }
  }
  return learner - comparator;
}

int path_index(double D, double P) {
  if (!(D > 0.0)) throw std::invalid_argument("D must be > 0");
  if (!(P >= 0.0) || !std::isfinite(P)) throw std::invalid_argument("P_T must be >= 0");
  return static_cast<int>(std::floor(0.5 * std::log2(1.0 + 2.0 * P / D))) + 1;
}

namespace {

void check_bound_args(int T, double D, double P) {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (!(D > 0.0) || !std::isfinite(D)) throw std::invalid_argument("D must be > 0");
  if (!(P >= 0.0) || !std::isfinite(P)) throw std::invalid_argument("P_T must be >= 0");
}

}  // namespace

double bound_theorem4(int T, double D, double G, double P) {
  check_bound_args(T, D, P);
  if (!(G > 0.0)) throw std::invalid_argument("G must be > 0");
  const double k = path_index(D, P);
  return 1.5 * std::sqrt(T * (G * G + 2.0 * G) * (D * D + 2.0 * D * P)) +
         (2.0 * G + 1.0) * D * std::sqrt(5.0 * T / 8.0) * (1.0 + 2.0 * std::log(k + 1.0));
}

double bound_theorem5(int T, double D, double P) {
  check_bound_args(T, D, P);
  const double k = path_index(D, P);
  return 1.5 * std::sqrt(T * (D * D + 2.0 * D * P)) + D * std::sqrt(T / 2.0) * (1.0 + 2.0 * std::log(k + 1.0));
}

double expert_bound_lemma2(double eta, int T, double D, double G, double P) {
  check_bound_args(T, D, P);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  if (!(G >= 0.0)) throw std::invalid_argument("G must be >= 0");
  return D * D / (2.0 * eta) + D / eta * P + eta * T * (0.5 * G * G + G);
}

double expert_bound_lemma5(double eta, int T, double D, double P) {
  check_bound_args(T, D, P);
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be > 0");
  return D * D / (2.0 * eta) + D / eta * P + 0.5 * eta * T;
}

double optimal_eta(GridMode mode, int T, double D, std::optional<double> G, double P) {
  check_bound_args(T, D, P);
  if (mode == GridMode::kLookahead) return std::sqrt((D * D + 2.0 * D * P) / T);
  if (!G || !(*G > 0.0)) throw std::invalid_argument("optimal_eta: standard mode requires G > 0");
  return std::sqrt((D * D + 2.0 * D * P) / (T * (*G * *G + 2.0 * *G)));
}

bool grid_covers(const StepGrid& grid, double eta) {
  constexpr double kRel = 1e-12;
  for (double e : grid.etas) {
    if (e <= eta * (1.0 + kRel) && eta <= 2.0 * e * (1.0 + kRel)) return true;
  }
  return false;
}

std::vector<double> weight_steps(const TraceExtras& extras) {
  std::vector<const WeightVector*> seq;
  if (extras.lookahead) seq.push_back(&extras.initial_weights);
  for (const WeightVector& w : extras.weights) seq.push_back(&w);
  if (!extras.lookahead && !extras.final_weights.empty()) seq.push_back(&extras.final_weights);
  std::vector<double> out;
  for (std::size_t k = 1; k < seq.size(); ++k) out.push_back(l1_distance(*seq[k], *seq[k - 1]));
  return out;
}

std::vector<double> expert_regrets(const RunTrace& trace, std::span<const CostFunction> costs,
                                   std::span<const Point> comparators) {
  if (!trace.extras) throw std::invalid_argument("expert_regrets: trace has no expert record");
  const TraceExtras& ex = *trace.extras;
  const std::size_t T = trace.decisions.size();
  if (costs.size() != T || comparators.size() != T) throw std::invalid_argument("expert_regrets: length mismatch");
  const std::size_t n = ex.etas.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      const Point& now = ex.expert_points[t][i];
      const Point& prev = t == 0 ? trace.start : ex.expert_points[t - 1][i];
      double s_expert = 0.0;
      double s_comp = 0.0;
      if (ex.lookahead) {
        s_expert = costs[t].value(now);
        s_comp = costs[t].value(comparators[t]);
      } else {
        s_expert = ex.gradients[t].dot(now - trace.decisions[t]);
        s_comp = ex.gradients[t].dot(comparators[t] - trace.decisions[t]);
      }
      sum += s_expert + (now - prev).norm() - s_comp;
    }
    out[i] = sum;
  }
  return out;
}

std::vector<double> telescoping_slack(const TraceExtras& extras) {
  if (!extras.lookahead) throw std::invalid_argument("telescoping_slack: lookahead traces only");
  const std::size_t n = extras.etas.size();
  double sq = 0.0;
  for (double s : weight_steps(extras)) sq += s * s;
  std::vector<double> mixed_minus_expert(n, 0.0);
  for (std::size_t t = 0; t < extras.weights.size(); ++t) {
    const WeightVector& w = extras.weights[t];
    const std::vector<double>& l = extras.meta_losses[t];
    double mixed = 0.0;
    for (std::size_t i = 0; i < n; ++i) mixed += w[i] * l[i];
    for (std::size_t i = 0; i < n; ++i) mixed_minus_expert[i] += mixed - l[i];
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rhs = std::log(1.0 / extras.initial_weights[i]) / extras.beta - sq / (2.0 * extras.beta);
    out[i] = rhs - mixed_minus_expert[i];
  }
  return out;
}

}  // namespace smoothol
