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

// Acceptance runner. One line per criterion; exit 1 if any fails.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "smoothol/competitive.hpp"
#include "smoothol/costs.hpp"
#include "smoothol/harness.hpp"
#include "smoothol/oracle.hpp"
#include "smoothol/regret.hpp"
#include "smoothol/rng.hpp"
#include "smoothol/solvers.hpp"

namespace {

using namespace smoothol;
namespace fs = std::filesystem;

// Pinned tolerances.
constexpr double kRatioSlackCap = 0.05;
constexpr double kRatioRuntimeCap = 30.0;
constexpr double kRegretRuntimeCap = 120.0;
constexpr double kHedgeEps = 1e-9;
constexpr double kProxAgreement = 1e-6;
constexpr double kOptimalityEps = 1e-6;
constexpr double kFiniteDiffRel = 1e-4;
constexpr double kConvexDpEps = 1e-9;

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Ratio protocol shared by the first three criteria: 1-D cube, T = 200,
// 20 seeds, grid DP with 2001 points.
struct RatioStats {
  int runs = 0;
  int violations = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double max_ratio_slack = 0.0;
};

void ratio_protocol(CostFamily family, double param, std::uint64_t tag,
                    const std::function<RunTrace(const std::vector<CostFunction>&, const Domain&)>& algo,
                    const SwitchingCost& m, double bound, RatioStats& st) {
  const Domain dom = Domain::cube(1, -1.0, 1.0);
  GridDpSettings dp;
  dp.points_per_axis = 2001;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    InstanceSpec spec;
    spec.family = family;
    spec.parameter = param;
    spec.domain = dom;
    spec.T = 200;
    spec.process = MinimizerProcess::kIidUniform;
    spec.seed = mix_seed({2026, tag, seed});
    const std::vector<CostFunction> costs = generate_instance(spec);
    const RunTrace tr = algo(costs, dom);
    const OracleResult opt = offline_optimal_grid_dp(costs, dom, Point::Zero(1), m, dp);
    const double ratio = competitive_ratio(tr.total, opt.total());
    const double lower = opt.total() - opt.slack;
    const double ratio_slack = lower > 0.0 ? tr.total / lower - ratio : std::numeric_limits<double>::infinity();
    ++st.runs;
    st.max_ratio_slack = std::max(st.max_ratio_slack, ratio_slack);
    st.worst_excess = std::max(st.worst_excess, ratio - bound);
    if (!(ratio <= bound + ratio_slack) || ratio_slack > kRatioSlackCap) ++st.violations;
  }
}

Verdict ratio_verdict(const RatioStats& st, double seconds, double cap) {
  Verdict v;
  v.pass = st.violations == 0 && seconds <= cap;
  v.detail = fmt::format("runs={} violations={} max(ratio-bound)={:.4g} max_slack={:.3g} time={:.2f}s", st.runs,
                         st.violations, st.worst_excess, st.max_ratio_slack, seconds);
  return v;
}

Verdict criterion1() {
  Stopwatch sw;
  RatioStats st;
  std::uint64_t tag = 100;
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    const SwitchingCost m{SwitchingKind::kL2};
    ratio_protocol(
        CostFamily::kPolyhedralNorm, alpha, tag++,
        [&](const std::vector<CostFunction>& c, const Domain& d) { return run_naive(c, d, Point::Zero(1), m); }, m,
        naive_ratio_bound_polyhedral(alpha), st);
  }
  return ratio_verdict(st, sw.seconds(), kRatioRuntimeCap);
}

Verdict criterion2() {
  Stopwatch sw;
  RatioStats st;
  std::uint64_t tag = 200;
  for (double lambda : {0.25, 1.0, 4.0}) {
    const SwitchingCost m{SwitchingKind::kHalfSquaredL2};
    ratio_protocol(
        CostFamily::kQuadratic, lambda, tag++,
        [&](const std::vector<CostFunction>& c, const Domain& d) { return run_naive(c, d, Point::Zero(1), m); }, m,
        naive_ratio_bound_quadratic_growth(lambda), st);
  }
  return ratio_verdict(st, sw.seconds(), kRatioRuntimeCap);
}

Verdict criterion3() {
  Stopwatch sw;
  RatioStats st;
  std::uint64_t tag = 300;
  double gamma_err = 0.0;
  for (double lambda : {0.25, 1.0, 4.0}) {
    const double gamma = recommended_gamma(lambda);
    gamma_err = std::max(gamma_err, std::abs(gamma - lambda / (lambda + std::sqrt(lambda))));
    const SwitchingCost m{SwitchingKind::kHalfSquaredL2};
    ratio_protocol(
        CostFamily::kQuadratic, lambda, tag++,
        [&](const std::vector<CostFunction>& c, const Domain& d) { return run_greedy(c, d, Point::Zero(1), gamma); },
        m, greedy_ratio_bound(lambda), st);
  }
  Verdict v = ratio_verdict(st, sw.seconds(), kRatioRuntimeCap);
  const bool exact_half = recommended_gamma(1.0) == 0.5;
  v.pass = v.pass && gamma_err <= 1e-12 && exact_half;
  v.detail += fmt::format(" gamma_err={:.2g} gamma(1)==0.5:{}", gamma_err, exact_half ? "yes" : "no");
  return v;
}

// Regret protocol shared by criteria 4 to 6.
struct RegretStats {
  int runs = 0;
  int violations = 0;
  int expert_checks = 0;
  int expert_violations = 0;
  double worst_fraction = 0.0;  // max regret / bound
  double min_G = std::numeric_limits<double>::infinity();
  double max_G = 0.0;
  // (comparator label, T) -> scaling points
  std::map<std::pair<std::string, int>, std::vector<ScalingPoint>> scaling;
  double seconds = 0.0;
};

const std::vector<ComparatorSpec>& regret_comparators() {
  static const std::vector<ComparatorSpec> specs{{ComparatorKind::kFixedPoint, 0.0, BudgetBasis::kAbsolute},
                                                 {ComparatorKind::kLazyTracking, 0.25, BudgetBasis::kSqrtTD},
                                                 {ComparatorKind::kLazyTracking, 0.1, BudgetBasis::kTD}};
  return specs;
}

RegretStats regret_protocol(bool lookahead, double lambda) {
  Stopwatch sw;
  RegretStats st;
  for (int d : {1, 3}) {
    const Domain dom = Domain::cube(d, -1.0, 1.0);
    const double D = dom.diameter();
    const Point start = Point::Zero(d);
    for (int T : {256, 1024, 4096}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        InstanceSpec spec;
        spec.family = CostFamily::kQuadratic;
        spec.parameter = lambda;
        spec.domain = dom;
        spec.T = T;
        spec.process = MinimizerProcess::kRandomWalk;
        spec.sigma = 0.1;
        spec.seed = mix_seed({2026, lookahead ? 5u : 4u, static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(T), seed});
        const std::vector<CostFunction> costs = generate_instance(spec);
        double G = 0.0;
        for (const CostFunction& f : costs) G = std::max(G, gradient_bound(f, dom));
        st.min_G = std::min(st.min_G, G);
        st.max_G = std::max(st.max_G, G);

        RunTrace tr;
        StepGrid grid;
        if (lookahead) {
          grid = build_step_grid(T, D, std::nullopt, GridMode::kLookahead);
          tr = lookahead_sader_run(costs, dom, grid);
        } else {
          grid = build_step_grid(T, D, G, GridMode::kStandard);
          CostStream stream(costs);
          tr = sader_run(stream, dom, grid);
        }
        for (const ComparatorSpec& c : regret_comparators()) {
          const std::vector<Point> u = generate_comparators(c, costs, dom, start);
          const double P = path_length(u, start);
          const double regret = dynamic_regret_switching(tr, u, start, costs, tr.switching_cost, false);
          const double bound = lookahead ? bound_theorem5(T, D, P) : bound_theorem4(T, D, G, P);
          ++st.runs;
          if (!(regret <= bound)) ++st.violations;
          st.worst_fraction = std::max(st.worst_fraction, regret / bound);
          st.scaling[{c.label(), T}].push_back(ScalingPoint{T, P, regret});

          const std::vector<double> er = expert_regrets(tr, costs, u);
          for (std::size_t i = 0; i < er.size(); ++i) {
            const double eb = lookahead ? expert_bound_lemma5(grid.etas[i], T, D, P)
                                        : expert_bound_lemma2(grid.etas[i], T, D, G, P);
            ++st.expert_checks;
            if (!(er[i] <= eb)) ++st.expert_violations;
          }
        }
      }
    }
  }
  st.seconds = sw.seconds();
  return st;
}

// Fit constants per comparator must be finite and non-increasing in T.
bool scaling_monotone(const RegretStats& st, std::string& detail) {
  bool ok = true;
  std::map<std::string, std::vector<std::pair<int, double>>> by_comp;
  for (const auto& [key, pts] : st.scaling) by_comp[key.first].emplace_back(key.second, fit_scaling(pts));
  for (auto& [label, fits] : by_comp) {
    std::sort(fits.begin(), fits.end());
    detail += " " + label + ":";
    for (std::size_t k = 0; k < fits.size(); ++k) {
      detail += fmt::format("{}{:.3g}", k ? "/" : "", fits[k].second);
      if (!std::isfinite(fits[k].second)) ok = false;
      if (k > 0 && fits[k].second > fits[k - 1].second) ok = false;
    }
  }
  return ok;
}

Verdict regret_verdict(const RegretStats& st, double cap) {
  Verdict v;
  std::string fits;
  const bool monotone = scaling_monotone(st, fits);
  v.pass = st.violations == 0 && st.runs >= 50 && monotone && st.seconds <= cap;
  v.detail = fmt::format("runs={} violations={} max(regret/bound)={:.3g} G=[{:.3g},{:.3g}] time={:.2f}s fits{}",
                         st.runs, st.violations, st.worst_fraction, st.min_G, st.max_G, st.seconds, fits);
  return v;
}

Verdict criterion7() {
  Verdict v;
  Rng rng(mix_seed({2026, 7}));
  long long rounds = 0;
  long long failures = 0;
  double worst = 0.0;
  for (int cfg = 0; cfg < 5; ++cfg) {
    const double G = rng.uniform(0.1, 10.0);
    const double D = rng.uniform(0.1, 5.0);
    const int T = 64 << (2 * (cfg % 3));
    const StepGrid grid = build_step_grid(T, D, G, GridMode::kStandard);
    const double bound = grid.beta * (G + 0.5) * D + kHedgeEps;
    WeightVector w = initial_weights(static_cast<int>(grid.etas.size()));
    std::vector<double> losses(w.size());
    for (int t = 0; t < 10000; ++t) {
      // Half the rounds put every expert at an end of the range.
      const bool extreme = rng.uniform01() < 0.5;
      for (double& l : losses) {
        l = extreme ? (rng.uniform01() < 0.5 ? -G * D : (G + 1.0) * D) : rng.uniform(-G * D, (G + 1.0) * D);
      }
      const WeightVector next = hedge_update(w, losses, grid.beta);
      double step = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) step += std::abs(next[i] - w[i]);
      ++rounds;
      worst = std::max(worst, step / bound);
      if (!(step <= bound)) ++failures;
      w = next;
    }
  }
  v.pass = failures == 0;
  v.detail = fmt::format("rounds={} failures={} max(step/bound)={:.3g}", rounds, failures, worst);
  return v;
}

Verdict criterion8() {
  Verdict v;
  Rng rng(mix_seed({2026, 8}));
  int failures = 0;
  const int tuples = 10000;
  for (int k = 0; k < tuples; ++k) {
    const int T = 1 + static_cast<int>(rng.below(100000));
    const double D = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const double G = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const double P = rng.uniform01() < 0.1 ? 0.0 : rng.uniform(0.0, T * D);
    const bool s = grid_covers(build_step_grid(T, D, G, GridMode::kStandard),
                               optimal_eta(GridMode::kStandard, T, D, G, P));
    const bool l = grid_covers(build_step_grid(T, D, std::nullopt, GridMode::kLookahead),
                               optimal_eta(GridMode::kLookahead, T, D, std::nullopt, P));
    failures += !s + !l;
  }
  v.pass = failures == 0;
  v.detail = fmt::format("tuples={} failures={}", tuples, failures);
  return v;
}

double recurrence_cost(const std::vector<Point>& seq, const std::vector<CostFunction>& costs, const Point& start,
                       const SwitchingCost& m) {
  double s = m(seq[0], start) + costs[0].value(seq[0]);
  for (std::size_t t = 1; t < seq.size(); ++t) s = s + m(seq[t], seq[t - 1]) + costs[t].value(seq[t]);
  return s;
}

Verdict criterion9() {
  Verdict v;
  Rng rng(mix_seed({2026, 9}));
  const Domain dom = Domain::cube(1, -1.0, 1.0);
  GridDpSettings brute;
  brute.points_per_axis = 11;
  brute.transform = DpTransform::kBrute;
  std::vector<Point> pts;
  for (int j = 0; j < 11; ++j) pts.push_back(make_point({j == 10 ? 1.0 : -1.0 + 2.0 * (j / 10.0)}));

  int enum_fail = 0;
  for (int k = 0; k < 1000; ++k) {
    const int T = 1 + static_cast<int>(rng.below(3));
    std::vector<CostFunction> costs;
    for (int t = 0; t < T; ++t) {
      const Point c = make_point({rng.uniform(-1.5, 1.5)});
      costs.push_back(rng.below(2) ? CostFunction::polyhedral(rng.uniform(0.1, 4), c, rng.uniform01())
                                   : CostFunction::quadratic(rng.uniform(0.1, 4), c, rng.uniform01()));
    }
    const SwitchingCost m{rng.below(2) ? SwitchingKind::kL2 : SwitchingKind::kHalfSquaredL2};
    const Point start = make_point({rng.uniform(-1, 1)});
    const OracleResult r = offline_optimal_grid_dp(costs, dom, start, m, brute);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(T, 0);
    std::vector<Point> seq(T);
    while (true) {
      for (int t = 0; t < T; ++t) seq[t] = pts[idx[t]];
      best = std::min(best, recurrence_cost(seq, costs, start, m));
      int p = 0;
      while (p < T && ++idx[p] == pts.size()) idx[p++] = 0;
      if (p == T) break;
    }
    if (recurrence_cost(r.sequence(), costs, start, m) != best) ++enum_fail;
  }

  int cross_fail = 0;
  double worst_gap = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<CostFunction> costs;
    for (int t = 0; t < 10; ++t) {
      const Point c = make_point({rng.uniform(-1.5, 1.5)});
      costs.push_back(k % 2 ? CostFunction::polyhedral(rng.uniform(0.25, 4), c)
                            : CostFunction::quadratic(rng.uniform(0.25, 4), c));
    }
    const SwitchingCost m{SwitchingKind::kHalfSquaredL2};
    const OracleResult dp = offline_optimal_grid_dp(costs, dom, Point::Zero(1), m);
    const OracleResult cv = offline_optimal_convex(costs, dom, Point::Zero(1), m);
    worst_gap = std::max(worst_gap, std::abs(cv.total() - dp.total()) / std::max(dp.slack, 1e-300));
    if (!(cv.total() <= dp.total() + kConvexDpEps && cv.total() >= dp.total() - dp.slack)) ++cross_fail;
  }
  v.pass = enum_fail == 0 && cross_fail == 0;
  v.detail = fmt::format("enumeration mismatches={}/1000 convex-vs-dp failures={}/100 max(|gap|/slack)={:.3g}",
                         enum_fail, cross_fail, worst_gap);
  return v;
}

Eigen::MatrixXd random_spd(int d, Rng& rng) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
  }
  Eigen::MatrixXd h = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
  return 0.5 * (h + h.transpose());
}

Domain random_domain(int d, Rng& rng) {
  return rng.below(2) ? Domain::cube(d, -1.0, 1.0) : Domain::ball(Point::Zero(d), rng.uniform(0.5, 2.0));
}

Verdict criterion10() {
  Verdict v;
  Rng rng(mix_seed({2026, 10}));
  const SwitchingCost half{SwitchingKind::kHalfSquaredL2};

  int closed_fail = 0;
  double closed_worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const Domain dom = random_domain(d, rng);
    const CostFunction f = CostFunction::quadratic(rng.uniform(0.1, 10), 2.0 * sample_in_domain(dom, rng));
    const Point anchor = sample_in_domain(dom, rng);
    const double gamma = rng.uniform(0.1, 10);
    SolverSettings s;
    s.max_iterations = 200000;
    s.tolerance = 1e-13;
    const double gap =
        (prox_step(f, anchor, gamma, half, dom).point - prox_step_iterative(f, anchor, gamma, dom, s).point).norm();
    closed_worst = std::max(closed_worst, gap);
    if (!(gap <= kProxAgreement)) ++closed_fail;
  }

  long long opt_checks = 0;
  int opt_fail = 0;
  for (int k = 0; k < 300; ++k) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const Domain dom = random_domain(d, rng);
    const Point c = 1.5 * sample_in_domain(dom, rng);
    const CostFunction f = k % 3 == 0   ? CostFunction::polyhedral(rng.uniform(0.2, 5), c)
                           : k % 3 == 1 ? CostFunction::quadratic(rng.uniform(0.2, 5), c)
                                        : CostFunction::general_quadratic(random_spd(d, rng), 0.25, c);
    const Point anchor = sample_in_domain(dom, rng);
    const double gamma = rng.uniform(0.1, 10);
    const Point x = prox_step(f, anchor, gamma, half, dom).point;
    const double fx = f.value(x) + 0.5 * gamma * (x - anchor).squaredNorm();
    for (int j = 0; j < 100; ++j) {
      const Point u = sample_in_domain(dom, rng);
      const double lhs = fx + 0.5 * gamma * (u - x).squaredNorm();
      const double rhs = f.value(u) + 0.5 * gamma * (u - anchor).squaredNorm();
      ++opt_checks;
      if (!(lhs <= rhs + kOptimalityEps)) ++opt_fail;
    }
  }

  int fd_fail = 0;
  int fd_checks = 0;
  for (int k = 0; k < 1000; ++k) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const Domain dom = random_domain(d, rng);
    const Point c = 1.5 * sample_in_domain(dom, rng);
    const CostFunction f = k % 2 ? CostFunction::quadratic(rng.uniform(0.2, 5), c)
                                 : CostFunction::general_quadratic(random_spd(d, rng), 0.25, c);
    const Point x = sample_in_domain(dom, rng);
    const Point g = f.subgradient(x);
    Point fd(d);
    for (int i = 0; i < d; ++i) {
      Point e = Point::Zero(d);
      e[i] = 1e-6;
      fd[i] = (f.value(x + e) - f.value(x - e)) / 2e-6;
    }
    ++fd_checks;
    if (!((fd - g).norm() <= kFiniteDiffRel * std::max(1.0, g.norm()))) ++fd_fail;
  }
  v.pass = closed_fail == 0 && opt_fail == 0 && fd_fail == 0;
  v.detail = fmt::format("prox closed-vs-iterative failures={}/1000 (max {:.2g}) optimality failures={}/{} "
                         "finite-difference failures={}/{}",
                         closed_fail, closed_worst, opt_fail, opt_checks, fd_fail, fd_checks);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict criterion11(const std::string& cli, const fs::path& workdir) {
  Verdict v;
  fs::create_directories(workdir);
  bool ok = true;
  for (const std::string sub : {"ratio", "regret"}) {
    std::string files[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = workdir / fmt::format("{}_{}.csv", sub, rep);
      fs::remove(out);
      const std::string cmd = fmt::format("\"{}\" {} --seed 17 --out \"{}\" > \"{}\" 2>&1", cli, sub, out.string(),
                                          (workdir / fmt::format("{}_{}.log", sub, rep)).string());
      const int rc = std::system(cmd.c_str());
      if (rc != 0) ok = false;
      files[rep] = slurp(out);
    }
    const bool same = !files[0].empty() && files[0] == files[1];
    ok = ok && same;
    v.detail += fmt::format("{}: {} bytes identical={} ", sub, files[0].size(), same ? "yes" : "no");
  }
  v.pass = ok;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  std::string cli;
  std::string workdir = "acceptance_tmp";
  app.add_option("--cli", cli, "Path to the smoothol executable")->required();
  app.add_option("--workdir", workdir, "Scratch directory");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  auto report = [&](int id, const std::string& name, const Verdict& v) {
    std::printf("%s criterion-%d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  };
  auto guarded = [](const std::function<Verdict()>& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      return Verdict{false, std::string("exception: ") + e.what()};
    }
  };

  report(1, "polyhedral-naive-ratio", guarded(criterion1));
  report(2, "quadratic-growth-naive-ratio", guarded(criterion2));
  report(3, "greedy-ratio", guarded(criterion3));

  RegretStats standard;
  RegretStats lookahead;
  report(4, "sader-regret", guarded([&] {
           standard = regret_protocol(false, 1.0);
           return regret_verdict(standard, kRegretRuntimeCap);
         }));
  report(5, "lookahead-sader-regret", guarded([&] {
           lookahead = regret_protocol(true, 50.0);
           Verdict v = regret_verdict(lookahead, std::numeric_limits<double>::infinity());
           const bool exceeds = lookahead.min_G > standard.max_G;
           v.pass = v.pass && exceeds;
           v.detail += fmt::format(" gradient bound exceeds standard-run G ({:.3g} > {:.3g}): {}", lookahead.min_G,
                                   standard.max_G, exceeds ? "yes" : "no");
           return v;
         }));
  report(6, "per-expert-regret", guarded([&] {
           Verdict v;
           const int checks = standard.expert_checks + lookahead.expert_checks;
           const int fails = standard.expert_violations + lookahead.expert_violations;
           v.pass = checks > 0 && fails == 0;
           v.detail = fmt::format("checks={} violations={}", checks, fails);
           return v;
         }));
  report(7, "hedge-stability", guarded(criterion7));
  report(8, "grid-coverage", guarded(criterion8));
  report(9, "oracle-soundness", guarded(criterion9));
  report(10, "solver-correctness", guarded(criterion10));
  report(11, "determinism", guarded([&] { return criterion11(cli, workdir); }));

  std::printf("%s: %d of 11 criteria failed\n", failed ? "FAIL" : "PASS", failed);
  return failed ? 1 : 0;
}
