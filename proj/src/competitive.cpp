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

#include "smoothol/competitive.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace smoothol {

namespace {

void check_run_inputs(std::span<const CostFunction> costs, const Domain& domain, const Point& start) {
  if (costs.empty()) throw std::invalid_argument("run: cost sequence is empty");
  check_point(start, "start");
  if (start.size() != domain.dimension()) throw std::invalid_argument("run: start dimension mismatch");
  if (!domain.contains(start, 1e-9)) throw std::invalid_argument("run: start is not feasible");
  for (const CostFunction& f : costs) {
    if (f.dimension() != domain.dimension()) throw std::invalid_argument("run: cost dimension mismatch");
  }
}

}  // namespace

void fill_costs(RunTrace& trace, std::span<const CostFunction> costs) {
  if (costs.size() != trace.decisions.size()) throw std::invalid_argument("fill_costs: length mismatch");
  const std::size_t n = trace.decisions.size();
  trace.hitting.assign(n, 0.0);
  trace.switching.assign(n, 0.0);
  double hit_sum = 0.0;
  double switch_sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const Point& prev = t == 0 ? trace.start : trace.decisions[t - 1];
    trace.hitting[t] = costs[t].value(trace.decisions[t]);
    trace.switching[t] = trace.switching_cost(trace.decisions[t], prev);
    hit_sum += trace.hitting[t];
    switch_sum += trace.switching[t];
  }
  trace.total = hit_sum + switch_sum;
}

RunTrace run_naive(std::span<const CostFunction> costs, const Domain& domain, const Point& start,
                   const SwitchingCost& m, const SolverSettings& settings) {
  check_run_inputs(costs, domain, start);
  RunTrace trace;
  trace.start = start;
  trace.switching_cost = m;
  trace.decisions.reserve(costs.size());
  for (const CostFunction& f : costs) trace.decisions.push_back(minimize_cost(f, domain, settings));
  fill_costs(trace, costs);
  return trace;
}

RunTrace run_greedy(std::span<const CostFunction> costs, const Domain& domain, const Point& start, double gamma,
                    const SolverSettings& settings) {
  check_run_inputs(costs, domain, start);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("run_greedy: gamma must be > 0");
  RunTrace trace;
  trace.start = start;
  trace.switching_cost = SwitchingCost{SwitchingKind::kHalfSquaredL2};
  trace.decisions.reserve(costs.size());
  Point prev = start;
  for (const CostFunction& f : costs) {
    SolveResult r = prox_step(f, prev, gamma, trace.switching_cost, domain, settings);
    trace.solver_warning = trace.solver_warning || !r.converged;
    prev = r.point;
    trace.decisions.push_back(std::move(r.point));
  }
  fill_costs(trace, costs);
  return trace;
}

double recommended_gamma(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("recommended_gamma: lambda must be > 0");
  return lambda / (lambda + std::sqrt(lambda));
}

double competitive_ratio(double alg_total, double opt_total) {
  if (alg_total < 0.0 || opt_total < 0.0 || std::isnan(alg_total) || std::isnan(opt_total)) {
    throw std::invalid_argument("competitive_ratio: totals must be >= 0");
  }
  if (opt_total == 0.0) return alg_total == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return alg_total / opt_total;
}

double naive_ratio_bound_polyhedral(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  return std::max(1.0, 2.0 / alpha);
}

double naive_ratio_bound_quadratic_growth(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  return 1.0 + 4.0 / lambda;
}

double greedy_ratio_bound(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  return 1.0 + 2.0 / std::sqrt(lambda);
}

}  // namespace smoothol
