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

#include "smoothol/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "smoothol/harness.hpp"
#include "smoothol/regret.hpp"
#include "smoothol/rng.hpp"
#include "smoothol/solvers.hpp"

namespace smoothol {

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"weight-simplex", "hedge-stability", "loss-range",  "feasibility",
                                              "prox-optimality", "grid-coverage",  "expert-bounds", "telescoping"};
  return names;
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteOutcome& s) { return s.failures == 0; });
}

namespace {

constexpr std::size_t kMaxWitnesses = 5;

class Suite {
 public:
  explicit Suite(std::string name) { out_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& witness) {
    ++out_.checks;
    if (ok) return;
    ++out_.failures;
    if (out_.witnesses.size() < kMaxWitnesses) out_.witnesses.push_back(witness());
  }

  SuiteOutcome take() { return std::move(out_); }

 private:
  SuiteOutcome out_;
};

// One randomized run of both aggregation algorithms with its comparators.
struct AuditRun {
  std::vector<CostFunction> costs;
  Domain domain = Domain::cube(1, -1.0, 1.0);
  Point start;
  double G = 0.0;
  double nominal_beta = 0.0;
  RunTrace standard;
  RunTrace lookahead;
  std::vector<std::pair<std::string, std::vector<Point>>> comparators;
};

std::vector<AuditRun> make_runs(const VerifyConfig& cfg) {
  std::vector<AuditRun> runs;
  Rng rng(mix_seed({cfg.seed, 0xA0D17ull}));
  for (int r = 0; r < cfg.runs; ++r) {
    AuditRun run;
    InstanceSpec spec;
    spec.family = r % 3 == 2 ? CostFamily::kGeneralQuadratic : CostFamily::kQuadratic;
    spec.parameter = rng.uniform(0.25, 4.0);
    spec.domain = r % 2 == 0 ? Domain::cube(cfg.dimension, -1.0, 1.0)
                             : Domain::ball(Point::Zero(cfg.dimension), 1.0);
    spec.T = cfg.T;
    spec.process = r % 2 == 0 ? MinimizerProcess::kIidUniform : MinimizerProcess::kRandomWalk;
    spec.sigma = 0.2;
    spec.seed = mix_seed({cfg.seed, static_cast<std::uint64_t>(r)});
    run.costs = generate_instance(spec);
    run.domain = spec.domain;
    run.start = Point::Zero(cfg.dimension);
    for (const CostFunction& f : run.costs) run.G = std::max(run.G, gradient_bound(f, run.domain));
    const double D = run.domain.diameter();

    StepGrid standard = build_step_grid(cfg.T, D, run.G, GridMode::kStandard);
    run.nominal_beta = standard.beta;
    standard.beta *= cfg.beta_scale;
    CostStream stream(run.costs);
    run.standard = sader_run(stream, run.domain, standard, run.start);

    StepGrid look = build_step_grid(cfg.T, D, std::nullopt, GridMode::kLookahead);
    look.beta *= cfg.beta_scale;
    run.lookahead = lookahead_sader_run(run.costs, run.domain, look, FixedPointSettings{}, SolverSettings{}, run.start);

    for (const ComparatorSpec& c : {ComparatorSpec{ComparatorKind::kFixedPoint, 0.0, BudgetBasis::kAbsolute},
                                    ComparatorSpec{ComparatorKind::kLazyTracking, 0.25, BudgetBasis::kSqrtTD},
                                    ComparatorSpec{ComparatorKind::kLazyTracking, 0.1, BudgetBasis::kTD},
                                    ComparatorSpec{ComparatorKind::kMinimizerTracking, 0.0, BudgetBasis::kAbsolute}}) {
      run.comparators.emplace_back(c.label(), generate_comparators(c, run.costs, run.domain, run.start));
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

SuiteOutcome suite_weight_simplex(const std::vector<AuditRun>& runs) {
  Suite s("weight-simplex");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const RunTrace* tr : {&runs[r].standard, &runs[r].lookahead}) {
      const TraceExtras& ex = *tr->extras;
      std::vector<const WeightVector*> all{&ex.initial_weights};
      for (const WeightVector& w : ex.weights) all.push_back(&w);
      if (!ex.final_weights.empty()) all.push_back(&ex.final_weights);
      for (std::size_t k = 0; k < all.size(); ++k) {
        double sum = 0.0;
        double lo = 1.0;
        for (double w : *all[k]) {
          sum += w;
          lo = std::min(lo, w);
        }
        s.check(std::abs(sum - 1.0) <= 1e-9 && lo >= 0.0, [&] {
          return fmt::format("run={} mode={} index={} sum={:.17g} min={:.17g}", r,
                             ex.lookahead ? "lookahead" : "standard", k, sum, lo);
        });
      }
    }
  }
  return s.take();
}

SuiteOutcome suite_hedge_stability(const std::vector<AuditRun>& runs, const VerifyConfig& cfg) {
  Suite s("hedge-stability");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const AuditRun& run = runs[r];
    const double bound = run.nominal_beta * (run.G + 0.5) * run.domain.diameter() + 1e-9;
    const std::vector<double> steps = weight_steps(*run.standard.extras);
    for (std::size_t k = 0; k < steps.size(); ++k) {
      s.check(steps[k] <= bound, [&] {
        return fmt::format("run={} round={} step={:.17g} bound={:.17g}", r, k + 2, steps[k], bound);
      });
    }
  }
  // Random losses at and inside the admissible range.
  Rng rng(mix_seed({cfg.seed, 0x4ED6Eull}));
  const double G = 1.0 + 4.0 * rng.uniform01();
  const double D = 0.5 + 2.0 * rng.uniform01();
  const StepGrid grid = build_step_grid(cfg.T, D, G, GridMode::kStandard);
  const double bound = grid.beta * (G + 0.5) * D + 1e-9;
  WeightVector w = initial_weights(static_cast<int>(grid.etas.size()));
  std::vector<double> losses(w.size());
  for (int t = 0; t < cfg.hedge_rounds; ++t) {
    for (double& l : losses) {
      const double u = rng.uniform01();
      l = u < 0.4 ? -G * D : u < 0.8 ? (G + 1.0) * D : rng.uniform(-G * D, (G + 1.0) * D);
    }
    WeightVector next = hedge_update(w, losses, grid.beta * cfg.beta_scale);
    double step = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) step += std::abs(next[i] - w[i]);
    s.check(step <= bound, [&] {
      return fmt::format("random-losses round={} step={:.17g} bound={:.17g}", t + 1, step, bound);
    });
    w = std::move(next);
  }
  return s.take();
}

SuiteOutcome suite_loss_range(const std::vector<AuditRun>& runs) {
  Suite s("loss-range");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const AuditRun& run = runs[r];
    const double D = run.domain.diameter();
    const double lo = -run.G * D - 1e-9;
    const double hi = (run.G + 1.0) * D + 1e-9;
    const TraceExtras& ex = *run.standard.extras;
    for (std::size_t t = 0; t < ex.meta_losses.size(); ++t) {
      for (std::size_t i = 0; i < ex.meta_losses[t].size(); ++i) {
        const double l = ex.meta_losses[t][i];
        s.check(l >= lo && l <= hi, [&] {
          return fmt::format("run={} round={} expert={} loss={:.17g} range=[{:.17g},{:.17g}]", r, t + 1, i + 1, l,
                             lo, hi);
        });
      }
    }
  }
  return s.take();
}

SuiteOutcome suite_feasibility(const std::vector<AuditRun>& runs) {
  Suite s("feasibility");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const RunTrace* tr : {&runs[r].standard, &runs[r].lookahead}) {
      for (std::size_t t = 0; t < tr->decisions.size(); ++t) {
        s.check(runs[r].domain.contains(tr->decisions[t], 1e-9),
                [&] { return fmt::format("run={} round={} decision infeasible", r, t + 1); });
        for (std::size_t i = 0; i < tr->extras->expert_points[t].size(); ++i) {
          s.check(runs[r].domain.contains(tr->extras->expert_points[t][i], 1e-9),
                  [&] { return fmt::format("run={} round={} expert={} iterate infeasible", r, t + 1, i + 1); });
        }
      }
    }
  }
  return s.take();
}

SuiteOutcome suite_prox_optimality(const VerifyConfig& cfg) {
  Suite s("prox-optimality");
  Rng rng(mix_seed({cfg.seed, 0x960Cull}));
  SolverSettings settings;
  settings.tolerance = cfg.prox_tolerance;
  const SwitchingCost half{SwitchingKind::kHalfSquaredL2};
  for (int k = 0; k < cfg.prox_cases; ++k) {
    const int d = cfg.dimension;
    const Domain domain = k % 2 == 0 ? Domain::cube(d, -1.0, 1.0) : Domain::ball(Point::Zero(d), 1.0);
    Point v = 1.5 * sample_in_domain(domain, rng);
    const double p = rng.uniform(0.25, 4.0);
    CostFunction f = CostFunction::quadratic(p, v);
    switch (k % 3) {
      case 0:
        f = CostFunction::polyhedral(p, v);
        break;
      case 1: {
        Eigen::MatrixXd a(d, d);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
        }
        Eigen::MatrixXd h = a * a.transpose() + p * Eigen::MatrixXd::Identity(d, d);
        h = 0.5 * (h + h.transpose());
        f = CostFunction::general_quadratic(h, p, v);
        break;
      }
      default:
        break;
    }
    const Point anchor = sample_in_domain(domain, rng);
    const double gamma = rng.uniform(0.2, 5.0);
    const Point x = prox_step(f, anchor, gamma, half, domain, settings).point;
    const double lhs0 = f.value(x) + 0.5 * gamma * (x - anchor).squaredNorm();
    for (int j = 0; j < cfg.samples; ++j) {
      const Point u = sample_in_domain(domain, rng);
      const double lhs = lhs0 + 0.5 * gamma * (u - x).squaredNorm();
      const double rhs = f.value(u) + 0.5 * gamma * (u - anchor).squaredNorm() + 1e-6;
      s.check(lhs <= rhs, [&] {
        return fmt::format("case={} family={} gamma={:.6g} sample={} lhs={:.17g} rhs={:.17g}", k,
                           to_string(f.family()), gamma, j, lhs, rhs);
      });
    }
  }
  return s.take();
}

SuiteOutcome suite_grid_coverage(const VerifyConfig& cfg) {
  Suite s("grid-coverage");
  Rng rng(mix_seed({cfg.seed, 0x691Dull}));
  for (int k = 0; k < cfg.grid_tuples; ++k) {
    const int T = 1 + static_cast<int>(rng.below(100000));
    const double D = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
    const double G = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
    const double P = rng.uniform01() < 0.1 ? (rng.uniform01() < 0.5 ? 0.0 : T * D) : rng.uniform(0.0, T * D);
    for (GridMode mode : {GridMode::kStandard, GridMode::kLookahead}) {
      const StepGrid grid = build_step_grid(T, D, G, mode);
      const double eta = optimal_eta(mode, T, D, G, P);
      s.check(grid_covers(grid, eta), [&] {
        return fmt::format("T={} D={:.17g} G={:.17g} P={:.17g} mode={} eta*={:.17g}", T, D, G, P,
                           mode == GridMode::kStandard ? "standard" : "lookahead", eta);
      });
    }
  }
  return s.take();
}

SuiteOutcome suite_expert_bounds(const std::vector<AuditRun>& runs) {
  Suite s("expert-bounds");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const AuditRun& run = runs[r];
    const double D = run.domain.diameter();
    const int T = static_cast<int>(run.costs.size());
    for (const auto& [label, u] : run.comparators) {
      const double p = path_length(u, run.start);
      for (const RunTrace* tr : {&run.standard, &run.lookahead}) {
        const std::vector<double> reg = expert_regrets(*tr, run.costs, u);
        for (std::size_t i = 0; i < reg.size(); ++i) {
          const double eta = tr->extras->etas[i];
          const double bound = tr->extras->lookahead ? expert_bound_lemma5(eta, T, D, p)
                                                     : expert_bound_lemma2(eta, T, D, run.G, p);
          s.check(reg[i] <= bound, [&] {
            return fmt::format("run={} mode={} comparator={} expert={} regret={:.17g} bound={:.17g}", r,
                               tr->extras->lookahead ? "lookahead" : "standard", label, i + 1, reg[i], bound);
          });
        }
      }
    }
  }
  return s.take();
}

SuiteOutcome suite_telescoping(const std::vector<AuditRun>& runs) {
  Suite s("telescoping");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::vector<double> slack = telescoping_slack(*runs[r].lookahead.extras);
    for (std::size_t i = 0; i < slack.size(); ++i) {
      s.check(slack[i] >= -1e-9, [&] { return fmt::format("run={} expert={} slack={:.17g}", r, i + 1, slack[i]); });
    }
  }
  return s.take();
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& config) {
  const std::vector<std::string>& suites = config.suites.empty() ? verify_suite_names() : config.suites;
  auto wants = [&](const char* name) { return std::find(suites.begin(), suites.end(), name) != suites.end(); };
  const bool need_runs = wants("weight-simplex") || wants("hedge-stability") || wants("loss-range") ||
                         wants("feasibility") || wants("expert-bounds") || wants("telescoping");
  const std::vector<AuditRun> runs = need_runs ? make_runs(config) : std::vector<AuditRun>{};

  VerifyReport report;
  for (const std::string& name : verify_suite_names()) {
    if (!wants(name.c_str())) continue;
    if (name == "weight-simplex") report.suites.push_back(suite_weight_simplex(runs));
    if (name == "hedge-stability") report.suites.push_back(suite_hedge_stability(runs, config));
    if (name == "loss-range") report.suites.push_back(suite_loss_range(runs));
    if (name == "feasibility") report.suites.push_back(suite_feasibility(runs));
    if (name == "prox-optimality") report.suites.push_back(suite_prox_optimality(config));
    if (name == "grid-coverage") report.suites.push_back(suite_grid_coverage(config));
    if (name == "expert-bounds") report.suites.push_back(suite_expert_bounds(runs));
    if (name == "telescoping") report.suites.push_back(suite_telescoping(runs));
  }
  return report;
}

}  // namespace smoothol
