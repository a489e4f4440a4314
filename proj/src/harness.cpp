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

#include "smoothol/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "smoothol/competitive.hpp"
#include "smoothol/report.hpp"
#include "smoothol/rng.hpp"

namespace smoothol {

std::string_view to_string(MinimizerProcess p) {
  switch (p) {
    case MinimizerProcess::kIidUniform:
      return "iid-uniform";
    case MinimizerProcess::kRandomWalk:
      return "random-walk";
    case MinimizerProcess::kAlternatingExtremes:
      return "alternating-extremes";
    case MinimizerProcess::kStagePartitioned:
      return "stage-partitioned";
  }
  return "?";
}

MinimizerProcess parse_minimizer_process(std::string_view name) {
  if (name == "iid-uniform") return MinimizerProcess::kIidUniform;
  if (name == "random-walk") return MinimizerProcess::kRandomWalk;
  if (name == "alternating-extremes") return MinimizerProcess::kAlternatingExtremes;
  if (name == "stage-partitioned") return MinimizerProcess::kStagePartitioned;
  throw std::invalid_argument("unknown minimizer process '" + std::string(name) + "'");
}

std::string_view to_string(OffsetMode m) { return m == OffsetMode::kZero ? "zero" : "iid-uniform"; }

OffsetMode parse_offset_mode(std::string_view name) {
  if (name == "zero") return OffsetMode::kZero;
  if (name == "iid-uniform") return OffsetMode::kIidUniform;
  throw std::invalid_argument("unknown offset mode '" + std::string(name) + "'");
}

std::string_view to_string(ComparatorKind k) {
  switch (k) {
    case ComparatorKind::kFixedPoint:
      return "fixed-point";
    case ComparatorKind::kLazyTracking:
      return "lazy-tracking";
    case ComparatorKind::kMinimizerTracking:
      return "minimizer-tracking";
    case ComparatorKind::kStagePartitioned:
      return "stage-partitioned";
  }
  return "?";
}

ComparatorKind parse_comparator_kind(std::string_view name) {
  if (name == "fixed-point") return ComparatorKind::kFixedPoint;
  if (name == "lazy-tracking") return ComparatorKind::kLazyTracking;
  if (name == "minimizer-tracking") return ComparatorKind::kMinimizerTracking;
  if (name == "stage-partitioned") return ComparatorKind::kStagePartitioned;
  throw std::invalid_argument("unknown comparator kind '" + std::string(name) + "'");
}

std::string_view to_string(BudgetBasis b) {
  switch (b) {
    case BudgetBasis::kAbsolute:
      return "absolute";
    case BudgetBasis::kSqrtTD:
      return "sqrtT-D";
    case BudgetBasis::kTD:
      return "T-D";
  }
  return "?";
}

BudgetBasis parse_budget_basis(std::string_view name) {
  if (name == "absolute") return BudgetBasis::kAbsolute;
  if (name == "sqrtT-D") return BudgetBasis::kSqrtTD;
  if (name == "T-D") return BudgetBasis::kTD;
  throw std::invalid_argument("unknown budget basis '" + std::string(name) + "'");
}

double ComparatorSpec::resolve_budget(int T, double D) const {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw std::invalid_argument("comparator budget must be >= 0");
  switch (basis) {
    case BudgetBasis::kAbsolute:
      return budget;
    case BudgetBasis::kSqrtTD:
      return budget * std::sqrt(static_cast<double>(T)) * D;
    case BudgetBasis::kTD:
      return budget * T * D;
  }
  return budget;
}

std::string ComparatorSpec::label() const {
  if (kind == ComparatorKind::kFixedPoint || kind == ComparatorKind::kMinimizerTracking) {
    return std::string(to_string(kind));
  }
  return fmt::format("{}[{}{}]", to_string(kind), budget,
                     basis == BudgetBasis::kAbsolute ? "" : "*" + std::string(to_string(basis)));
}

Point upper_extreme(const Domain& domain) {
  if (domain.is_box()) return domain.as_box().upper;
  const Ball& b = domain.as_ball();
  const int d = domain.dimension();
  return b.center + Point::Constant(d, b.radius / std::sqrt(static_cast<double>(d)));
}

Point lower_extreme(const Domain& domain) {
  if (domain.is_box()) return domain.as_box().lower;
  const Ball& b = domain.as_ball();
  const int d = domain.dimension();
  return b.center - Point::Constant(d, b.radius / std::sqrt(static_cast<double>(d)));
}

namespace {

int stage_count(double tau, double D) {
  if (!(D > 0.0)) return 1;
  return std::max(1, static_cast<int>(std::floor(tau / D)));
}

Point stage_corner(const Domain& domain, int t, int T, int stages) {
  const int k = static_cast<int>(static_cast<std::int64_t>(t) * stages / T);
  return k % 2 == 0 ? upper_extreme(domain) : lower_extreme(domain);
}

Eigen::MatrixXd random_curvature(int d, double lambda, double anisotropy, Rng& rng) {
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::VectorXd e(d);
  for (int i = 0; i < d; ++i) e[i] = i == 0 ? lambda : lambda * rng.uniform(1.0, anisotropy);
  Eigen::MatrixXd h = q * e.asDiagonal() * q.transpose();
  return 0.5 * (h + h.transpose());
}

}  // namespace

std::vector<CostFunction> generate_instance(const InstanceSpec& spec) {
  if (spec.T < 1) throw std::invalid_argument("instance: T must be >= 1");
  if (!(spec.parameter > 0.0)) throw std::invalid_argument("instance: class parameter must be > 0");
  if (!(spec.sigma >= 0.0)) throw std::invalid_argument("instance: sigma must be >= 0");
  if (!(spec.anisotropy >= 1.0)) throw std::invalid_argument("instance: anisotropy must be >= 1");
  const Domain& domain = spec.domain;
  const int d = domain.dimension();
  const double D = domain.diameter();
  const int stages = stage_count(spec.stage_budget, D);
  Rng rng(mix_seed({spec.seed, 0x1157A9CEull}));

  std::vector<CostFunction> out;
  out.reserve(spec.T);
  Point walk = domain.center();
  for (int t = 0; t < spec.T; ++t) {
    Point v;
    switch (spec.process) {
      case MinimizerProcess::kIidUniform:
        v = sample_in_domain(domain, rng);
        break;
      case MinimizerProcess::kRandomWalk:
        if (spec.sigma > 0.0) walk = domain.project(walk + spec.sigma * sample_gaussian(d, rng));
        v = walk;
        break;
      case MinimizerProcess::kAlternatingExtremes:
        v = t % 2 == 0 ? upper_extreme(domain) : lower_extreme(domain);
        break;
      case MinimizerProcess::kStagePartitioned:
        v = stage_corner(domain, t, spec.T, stages);
        break;
    }
    const double c = spec.offsets == OffsetMode::kZero ? 0.0 : rng.uniform01();
    switch (spec.family) {
      case CostFamily::kPolyhedralNorm:
        out.push_back(CostFunction::polyhedral(spec.parameter, std::move(v), c));
        break;
      case CostFamily::kQuadratic:
        out.push_back(CostFunction::quadratic(spec.parameter, std::move(v), c));
        break;
      case CostFamily::kGeneralQuadratic:
        out.push_back(CostFunction::general_quadratic(random_curvature(d, spec.parameter, spec.anisotropy, rng),
                                                      spec.parameter, std::move(v), c));
        break;
    }
    if (!verify_class(out.back(), domain, 8, mix_seed({spec.seed, static_cast<std::uint64_t>(t)}))) {
      throw std::runtime_error(fmt::format("instance: generated cost at round {} fails its class check", t));
    }
  }
  return out;
}

std::vector<Point> generate_comparators(const ComparatorSpec& spec, std::span<const CostFunction> costs,
                                        const Domain& domain, const Point& start) {
  const int T = static_cast<int>(costs.size());
  if (T < 1) throw std::invalid_argument("comparators: empty instance");
  const double D = domain.diameter();
  std::vector<Point> out;
  out.reserve(T);
  if (spec.kind == ComparatorKind::kFixedPoint) {
    out.assign(T, start);
    return out;
  }
  if (spec.kind == ComparatorKind::kMinimizerTracking) {
    for (const CostFunction& f : costs) out.push_back(domain.project(f.minimizer()));
    return out;
  }
  const double tau = spec.resolve_budget(T, D);
  const int stages = stage_count(tau, D);
  double remaining = tau;
  Point u = start;
  for (int t = 0; t < T; ++t) {
    const Point target = spec.kind == ComparatorKind::kLazyTracking ? domain.project(costs[t].minimizer())
                                                                    : stage_corner(domain, t, T, stages);
    const double dist = (target - u).norm();
    const double step = std::min(dist, remaining);
    if (step > 0.0) {
      Point next = step == dist ? target : Point(u + (target - u) * (step / dist));
      next = domain.project(next);
      remaining -= (next - u).norm();
      u = std::move(next);
    }
    out.push_back(u);
  }
  return out;
}

double fit_scaling(std::span<const ScalingPoint> points) {
  if (points.empty()) throw std::invalid_argument("fit_scaling: no rows");
  double best = -std::numeric_limits<double>::infinity();
  for (const ScalingPoint& p : points) {
    if (p.T <= 0) throw std::invalid_argument("fit_scaling: T must be > 0");
    if (!(p.path_length >= 0.0)) throw std::invalid_argument("fit_scaling: path length must be >= 0");
    best = std::max(best, p.regret / std::sqrt(p.T * (1.0 + p.path_length)));
  }
  return best;
}

std::string_view to_string(AlgorithmKind k) {
  switch (k) {
    case AlgorithmKind::kNaive:
      return "naive";
    case AlgorithmKind::kGreedy:
      return "greedy";
    case AlgorithmKind::kSader:
      return "sader";
    case AlgorithmKind::kLookaheadSader:
      return "lookahead-sader";
  }
  return "?";
}

AlgorithmKind parse_algorithm_kind(std::string_view name) {
  if (name == "naive") return AlgorithmKind::kNaive;
  if (name == "greedy") return AlgorithmKind::kGreedy;
  if (name == "sader") return AlgorithmKind::kSader;
  if (name == "lookahead-sader") return AlgorithmKind::kLookaheadSader;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

bool is_ratio_algorithm(AlgorithmKind k) { return k == AlgorithmKind::kNaive || k == AlgorithmKind::kGreedy; }

bool ExperimentResult::all_satisfied() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ReportRow& r) { return r.bound_satisfied == "true" || r.bound_satisfied.empty(); });
}

namespace {

struct CellTask {
  std::size_t instance = 0;
  std::uint64_t replicate = 0;
  int T = 0;
};

bool is_quadratic_growth(CostFamily f) { return f != CostFamily::kPolyhedralNorm; }

SwitchingKind natural_switching(CostFamily f) {
  return f == CostFamily::kPolyhedralNorm ? SwitchingKind::kL2 : SwitchingKind::kHalfSquaredL2;
}

std::string safe_file_name(std::string s) {
  for (char& c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return s;
}

class CellRunner {
 public:
  CellRunner(const ExperimentConfig& config, const CellTask& task) : config_(config), task_(task) {}

  std::vector<ReportRow> run() {
    const InstanceConfig& ic = config_.instances[task_.instance];
    cell_seed_ = mix_seed({config_.seed, static_cast<std::uint64_t>(task_.instance), task_.replicate,
                           static_cast<std::uint64_t>(task_.T)});
    prefix_ = fmt::format("i{}-s{}-T{}", task_.instance, task_.replicate, task_.T);
    family_ = ic.costs && !ic.costs->empty() ? ic.costs->front().family() : ic.spec.family;
    param_ = ic.costs && !ic.costs->empty() ? ic.costs->front().parameter() : ic.spec.parameter;
    std::vector<ReportRow> rows;
    try {
      if (ic.costs) {
        costs_ = *ic.costs;
      } else {
        InstanceSpec spec = ic.spec;
        spec.T = task_.T;
        spec.seed = cell_seed_;
        costs_ = generate_instance(spec);
      }
      start_ = ic.start ? *ic.start : Point::Zero(ic.spec.domain.dimension());
      if (!ic.spec.domain.contains(start_, 1e-9)) {
        throw std::invalid_argument("start is not feasible (the origin is used unless a start is given)");
      }
    } catch (const std::exception& e) {
      for (const AlgorithmSpec& a : config_.algorithms) rows.push_back(error_row(a, "", e.what()));
      return rows;
    }
    for (const AlgorithmSpec& a : config_.algorithms) {
      try {
        if (is_ratio_algorithm(a.kind)) {
          rows.push_back(run_ratio(a));
        } else {
          for (ReportRow& r : run_regret(a)) rows.push_back(std::move(r));
        }
      } catch (const std::exception& e) {
        rows.push_back(error_row(a, "", e.what()));
      }
    }
    return rows;
  }

 private:
  const Domain& domain() const { return config_.instances[task_.instance].spec.domain; }
  int horizon() const { return static_cast<int>(costs_.size()); }

  ReportRow base_row(const AlgorithmSpec& a, const std::string& comparator) const {
    ReportRow r;
    r.cell_id = prefix_ + "-" + std::string(to_string(a.kind));
    if (!comparator.empty()) r.cell_id += "-" + comparator;
    r.seed = cell_seed_;
    r.family = std::string(to_string(family_));
    r.param = param_;
    r.T = costs_.empty() ? task_.T : horizon();
    r.d = domain().dimension();
    r.algorithm = std::string(to_string(a.kind));
    r.comparator = comparator;
    return r;
  }

  ReportRow error_row(const AlgorithmSpec& a, const std::string& comparator, const std::string& what) const {
    ReportRow r = base_row(a, comparator);
    r.bound_satisfied = "error";
    r.error = what;
    return r;
  }

  const OracleResult* oracle(SwitchingKind kind) {
    auto it = oracles_.find(kind);
    if (it != oracles_.end()) return &it->second;
    OracleChoice method = config_.oracle.method;
    if (method == OracleChoice::kNone) return nullptr;
    if (method == OracleChoice::kAuto) {
      method = domain().dimension() == 1 ? OracleChoice::kGridDp : OracleChoice::kJointConvex;
    }
    const SwitchingCost m{kind};
    OracleResult res = method == OracleChoice::kGridDp
                           ? offline_optimal_grid_dp(costs_, domain(), start_, m, config_.oracle.grid)
                           : offline_optimal_convex(costs_, domain(), start_, m, config_.oracle.convex);
    write_trace(fmt::format("{}-oracle-{}", prefix_, to_string(kind)), nullptr, &res);
    return &oracles_.emplace(kind, std::move(res)).first->second;
  }

  void write_trace(const std::string& name, const RunTrace* trace, const OracleResult* res) const {
    if (!config_.output.trace_dir) return;
    std::filesystem::create_directories(*config_.output.trace_dir);
    const std::filesystem::path path = std::filesystem::path(*config_.output.trace_dir) / (safe_file_name(name) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace file " + path.string());
    if (trace) write_trace_csv(out, *trace, config_.output.trace_extras);
    if (res) write_oracle_csv(out, *res);
  }

  ReportRow run_ratio(const AlgorithmSpec& a) {
    ReportRow row = base_row(a, "");
    RunTrace trace;
    std::optional<double> bound;
    SwitchingKind kind = SwitchingKind::kHalfSquaredL2;
    if (a.kind == AlgorithmKind::kNaive) {
      kind = config_.switching.value_or(natural_switching(family_));
      trace = run_naive(costs_, domain(), start_, SwitchingCost{kind}, config_.solver);
      if (kind == natural_switching(family_)) {
        bound = family_ == CostFamily::kPolyhedralNorm ? naive_ratio_bound_polyhedral(param_)
                                                       : naive_ratio_bound_quadratic_growth(param_);
      }
    } else {
      const double gamma = a.gamma.value_or(recommended_gamma(param_));
      trace = run_greedy(costs_, domain(), start_, gamma, config_.solver);
      if (is_quadratic_growth(family_) && !a.gamma) bound = greedy_ratio_bound(param_);
    }
    write_trace(row.cell_id, &trace, nullptr);
    row.total_cost = trace.total;
    row.bound = bound;
    const OracleResult* opt = oracle(kind);
    if (!opt) return row;
    row.oracle_cost = opt->total();
    const double ratio = competitive_ratio(trace.total, opt->total());
    row.ratio = ratio;
    if (bound) {
      const double slack = opt->method == OracleMethod::kGridDp ? opt->slack : std::max(0.0, opt->convergence_gap);
      const double lower = opt->total() - slack;
      const double ratio_slack =
          lower > 0.0 ? trace.total / lower - ratio : std::numeric_limits<double>::infinity();
      row.bound_satisfied = ratio <= *bound + ratio_slack ? "true" : "false";
    }
    return row;
  }

  std::vector<ReportRow> run_regret(const AlgorithmSpec& a) {
    const Domain& dom = domain();
    const double D = dom.diameter();
    const int T = horizon();
    RunTrace trace;
    double G = 0.0;
    for (const CostFunction& f : costs_) G = std::max(G, gradient_bound(f, dom));
    if (a.kind == AlgorithmKind::kSader) {
      if (!(G > 0.0)) throw std::invalid_argument("gradient bound is zero; the standard grid needs G > 0");
      CostStream stream(costs_);
      trace = sader_run(stream, dom, build_step_grid(T, D, G, GridMode::kStandard), start_);
    } else {
      trace = lookahead_sader_run(costs_, dom, build_step_grid(T, D, std::nullopt, GridMode::kLookahead),
                                  config_.fixed_point, config_.solver, start_);
    }
    write_trace(prefix_ + "-" + std::string(to_string(a.kind)), &trace, nullptr);

    std::vector<ReportRow> rows;
    std::vector<ComparatorSpec> comparators = config_.comparators;
    if (comparators.empty()) comparators.push_back(ComparatorSpec{});
    for (const ComparatorSpec& c : comparators) {
      const std::string label = c.label();
      try {
        ReportRow row = base_row(a, label);
        const std::vector<Point> u = generate_comparators(c, costs_, dom, start_);
        const double p = path_length(u, start_);
        const double regret =
            dynamic_regret_switching(trace, u, start_, costs_, SwitchingCost{SwitchingKind::kL2}, false);
        const double bound = a.kind == AlgorithmKind::kSader ? bound_theorem4(T, D, G, p) : bound_theorem5(T, D, p);
        row.total_cost = trace.total;
        row.regret = regret;
        row.path_length = p;
        row.bound = bound;
        row.bound_satisfied = regret <= bound ? "true" : "false";
        rows.push_back(std::move(row));
      } catch (const std::exception& e) {
        rows.push_back(error_row(a, label, e.what()));
      }
    }
    return rows;
  }

  const ExperimentConfig& config_;
  CellTask task_;
  std::uint64_t cell_seed_ = 0;
  std::string prefix_;
  CostFamily family_ = CostFamily::kQuadratic;
  double param_ = 0.0;
  std::vector<CostFunction> costs_;
  Point start_;
  std::map<SwitchingKind, OracleResult> oracles_;
};

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  std::vector<CellTask> tasks;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    const InstanceConfig& ic = config.instances[i];
    std::vector<std::uint64_t> seeds = ic.seeds;
    if (seeds.empty()) seeds.push_back(0);
    std::vector<int> horizons = ic.horizons;
    if (ic.costs) horizons = {static_cast<int>(ic.costs->size())};
    if (horizons.empty()) horizons.push_back(ic.spec.T);
    for (std::uint64_t s : seeds) {
      for (int T : horizons) tasks.push_back(CellTask{i, s, T});
    }
  }

  std::vector<std::vector<ReportRow>> per_cell(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < tasks.size(); k = next++) per_cell[k] = CellRunner(config, tasks[k]).run();
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  ExperimentResult result;
  for (std::vector<ReportRow>& rows : per_cell) {
    for (ReportRow& r : rows) result.rows.push_back(std::move(r));
  }

  std::vector<std::pair<std::string, std::string>> groups;
  std::map<std::pair<std::string, std::string>, std::vector<ScalingPoint>> points;
  for (const ReportRow& r : result.rows) {
    if (!r.regret || !r.path_length) continue;
    const auto key = std::make_pair(r.algorithm, r.comparator);
    if (!points.count(key)) groups.push_back(key);
    points[key].push_back(ScalingPoint{r.T, *r.path_length, *r.regret});
  }
  for (const auto& key : groups) {
    result.fits.push_back(FitSummary{key.second, key.first, fit_scaling(points[key])});
  }
  return result;
}

}  // namespace smoothol
