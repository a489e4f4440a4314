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

#ifndef SMOOTHOL_HARNESS_HPP_
#define SMOOTHOL_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smoothol/costs.hpp"
#include "smoothol/geometry.hpp"
#include "smoothol/oracle.hpp"
#include "smoothol/regret.hpp"
#include "smoothol/solvers.hpp"

namespace smoothol {

enum class MinimizerProcess { kIidUniform, kRandomWalk, kAlternatingExtremes, kStagePartitioned };
std::string_view to_string(MinimizerProcess p);
MinimizerProcess parse_minimizer_process(std::string_view name);

enum class OffsetMode { kZero, kIidUniform };
std::string_view to_string(OffsetMode m);
OffsetMode parse_offset_mode(std::string_view name);

struct InstanceSpec {
  CostFamily family = CostFamily::kQuadratic;
  /// alpha or lambda.
  double parameter = 1.0;
  Domain domain = Domain::cube(1, -1.0, 1.0);
  int T = 100;
  MinimizerProcess process = MinimizerProcess::kIidUniform;
  /// Random-walk step scale.
  double sigma = 0.1;
  /// Budget tau of the stage-partitioned process: floor(tau / D) stages.
  double stage_budget = 0.0;
  OffsetMode offsets = OffsetMode::kZero;
  /// General-quadratic eigenvalues are drawn from [lambda, anisotropy * lambda].
  double anisotropy = 4.0;
  std::uint64_t seed = 0;
};

/// Deterministic in spec.seed. Every generated cost passes verify_class.
std::vector<CostFunction> generate_instance(const InstanceSpec& spec);

enum class ComparatorKind { kFixedPoint, kLazyTracking, kMinimizerTracking, kStagePartitioned };
std::string_view to_string(ComparatorKind k);
ComparatorKind parse_comparator_kind(std::string_view name);

/// How a comparator budget scales: tau = scale, scale sqrt(T) D, or scale T D.
enum class BudgetBasis { kAbsolute, kSqrtTD, kTD };
std::string_view to_string(BudgetBasis b);
BudgetBasis parse_budget_basis(std::string_view name);

struct ComparatorSpec {
  ComparatorKind kind = ComparatorKind::kFixedPoint;
  double budget = 0.0;
  BudgetBasis basis = BudgetBasis::kAbsolute;

  double resolve_budget(int T, double D) const;
  std::string label() const;
};

/// Comparator sequence u_1..u_T for the instance, u_0 = start.
///   fixed-point:         u_t = start
///   lazy-tracking:       step toward project(v_t) while budget remains
///   minimizer-tracking:  u_t = project(v_t), no budget
///   stage-partitioned:   floor(tau / D) equal stages at alternating corners,
///                        reached lazily within the budget
std::vector<Point> generate_comparators(const ComparatorSpec& spec, std::span<const CostFunction> costs,
                                        const Domain& domain, const Point& start);

/// Opposite extreme points of the domain used by the alternating processes.
Point upper_extreme(const Domain& domain);
Point lower_extreme(const Domain& domain);

struct ScalingPoint {
  int T = 0;
  double path_length = 0.0;
  double regret = 0.0;
};

/// max over points of regret / sqrt(T (1 + P_T)).
double fit_scaling(std::span<const ScalingPoint> points);

// Experiment orchestration.

enum class AlgorithmKind { kNaive, kGreedy, kSader, kLookaheadSader };
std::string_view to_string(AlgorithmKind k);
AlgorithmKind parse_algorithm_kind(std::string_view name);
bool is_ratio_algorithm(AlgorithmKind k);

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kNaive;
  /// Greedy weight; defaults to lambda / (lambda + sqrt(lambda)).
  std::optional<double> gamma;
};

struct InstanceConfig {
  InstanceSpec spec;
  std::vector<int> horizons;
  std::vector<std::uint64_t> seeds;
  /// Explicit per-round costs replace generation when present.
  std::optional<std::vector<CostFunction>> costs;
  std::optional<Point> start;
};

enum class OracleChoice { kAuto, kGridDp, kJointConvex, kNone };

struct OracleConfig {
  OracleChoice method = OracleChoice::kAuto;
  GridDpSettings grid;
  ConvexOracleSettings convex;
};

struct OutputConfig {
  std::optional<std::string> report;
  std::optional<std::string> trace_dir;
  bool trace_extras = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::vector<InstanceConfig> instances;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<ComparatorSpec> comparators;
  OracleConfig oracle;
  SolverSettings solver;
  FixedPointSettings fixed_point;
  /// Switching cost for the naive rule; empty means the family's natural
  /// pairing (polyhedral with l2, quadratic growth with half-squared-l2).
  std::optional<SwitchingKind> switching;
  OutputConfig output;
};

struct ReportRow {
  std::string cell_id;
  std::uint64_t seed = 0;
  std::string family;
  double param = 0.0;
  int T = 0;
  int d = 0;
  std::string algorithm;
  std::string comparator;
  std::optional<double> total_cost;
  std::optional<double> oracle_cost;
  std::optional<double> ratio;
  std::optional<double> regret;
  std::optional<double> path_length;
  std::optional<double> bound;
  /// "true", "false", "" (no bound applies) or "error".
  std::string bound_satisfied;
  std::string error;
};

struct FitSummary {
  std::string comparator;
  std::string algorithm;
  double value = 0.0;
};

struct ExperimentResult {
  std::vector<ReportRow> rows;
  std::vector<FitSummary> fits;

  bool all_satisfied() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 1);

}  // namespace smoothol

#endif  // SMOOTHOL_HARNESS_HPP_
