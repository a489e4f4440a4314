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

#include <gtest/gtest.h>

#include <cmath>

#include "smoothol/harness.hpp"

namespace smoothol {
namespace {

TEST(GenerateInstance, Deterministic) {
  InstanceSpec s;
  s.domain = Domain::cube(2, -1, 1);
  s.T = 30;
  s.seed = 99;
  s.offsets = OffsetMode::kIidUniform;
  const auto a = generate_instance(s);
  const auto b = generate_instance(s);
  ASSERT_EQ(a.size(), 30u);
  for (std::size_t t = 0; t < a.size(); ++t) {
    EXPECT_EQ(a[t].minimizer(), b[t].minimizer());
    EXPECT_EQ(a[t].offset(), b[t].offset());
  }
}

TEST(GenerateInstance, RandomWalkWithoutSteps) {
  InstanceSpec s;
  s.process = MinimizerProcess::kRandomWalk;
  s.sigma = 0.0;
  s.T = 10;
  for (const CostFunction& f : generate_instance(s)) EXPECT_EQ(f.minimizer(), generate_instance(s)[0].minimizer());
}

TEST(GenerateInstance, AlternatingExtremes) {
  InstanceSpec s;
  s.family = CostFamily::kPolyhedralNorm;
  s.process = MinimizerProcess::kAlternatingExtremes;
  s.T = 5;
  const auto costs = generate_instance(s);
  for (int t = 0; t < 5; ++t) EXPECT_EQ(costs[t].minimizer()[0], t % 2 == 0 ? 1.0 : -1.0);
}

TEST(GenerateInstance, FamiliesPassClassCheck) {
  for (CostFamily fam : {CostFamily::kPolyhedralNorm, CostFamily::kQuadratic, CostFamily::kGeneralQuadratic}) {
    InstanceSpec s;
    s.family = fam;
    s.parameter = 0.5;
    s.domain = Domain::ball(Point::Zero(3), 1.0);
    s.T = 20;
    s.seed = 5;
    for (const CostFunction& f : generate_instance(s)) {
      EXPECT_EQ(f.family(), fam);
      EXPECT_TRUE(verify_class(f, s.domain, 50, 1));
    }
  }
}

std::vector<CostFunction> sample_costs(int T) {
  InstanceSpec s;
  s.domain = Domain::cube(1, -1, 1);
  s.T = T;
  s.seed = 3;
  return generate_instance(s);
}

TEST(Comparators, FixedPointAndZeroBudget) {
  const Domain box = Domain::cube(1, -1, 1);
  const auto costs = sample_costs(16);
  const Point start = Point::Zero(1);
  const auto fixed = generate_comparators({ComparatorKind::kFixedPoint, 0.0, BudgetBasis::kAbsolute}, costs, box, start);
  EXPECT_EQ(path_length(fixed, start), 0.0);
  const auto lazy = generate_comparators({ComparatorKind::kLazyTracking, 0.0, BudgetBasis::kAbsolute}, costs, box, start);
  for (std::size_t t = 0; t < fixed.size(); ++t) EXPECT_EQ(lazy[t], fixed[t]);
}

TEST(Comparators, BudgetsAreRespected) {
  const Domain box = Domain::cube(2, -1, 1);
  InstanceSpec s;
  s.domain = box;
  s.T = 64;
  s.seed = 4;
  const auto costs = generate_instance(s);
  const Point start = Point::Zero(2);
  for (double b : {0.5, 2.0, 7.0}) {
    for (ComparatorKind k : {ComparatorKind::kLazyTracking, ComparatorKind::kStagePartitioned}) {
      const auto u = generate_comparators({k, b, BudgetBasis::kAbsolute}, costs, box, start);
      EXPECT_LE(path_length(u, start), b + 1e-12);
      for (const Point& p : u) EXPECT_TRUE(box.contains(p, 1e-12));
    }
  }
  const auto track = generate_comparators({ComparatorKind::kMinimizerTracking, 0.0, BudgetBasis::kAbsolute}, costs, box, start);
  for (std::size_t t = 0; t < costs.size(); ++t) EXPECT_EQ(track[t], box.project(costs[t].minimizer()));
}

TEST(Comparators, StagePartitionedCountsMoves) {
  const Domain box = Domain::cube(1, -1, 1);
  const double D = box.diameter();
  const auto costs = sample_costs(4);
  const Point start = Point::Zero(1);
  const auto u = generate_comparators({ComparatorKind::kStagePartitioned, 2.0 * D, BudgetBasis::kAbsolute}, costs, box, start);
  int switches = 0;
  for (std::size_t t = 0; t < u.size(); ++t) {
    if (u[t] != (t == 0 ? start : u[t - 1])) ++switches;
  }
  EXPECT_LE(switches, 2);
  EXPECT_LE(path_length(u, start), 2.0 * D + 1e-12);
}

TEST(ComparatorSpec, ResolveAndLabel) {
  const ComparatorSpec c{ComparatorKind::kLazyTracking, 0.25, BudgetBasis::kSqrtTD};
  EXPECT_DOUBLE_EQ(c.resolve_budget(256, 2.0), 8.0);
  EXPECT_EQ(c.label(), "lazy-tracking[0.25*sqrtT-D]");
  EXPECT_DOUBLE_EQ((ComparatorSpec{ComparatorKind::kLazyTracking, 0.1, BudgetBasis::kTD}.resolve_budget(100, 2.0)), 20.0);
}

TEST(Extremes, BoxAndBall) {
  const Domain box = Domain::box(make_point({-1, 0}), make_point({2, 3}));
  EXPECT_EQ(upper_extreme(box), make_point({2, 3}));
  EXPECT_EQ(lower_extreme(box), make_point({-1, 0}));
  const Domain ball = Domain::ball(Point::Zero(2), 1.0);
  EXPECT_NEAR(upper_extreme(ball).norm(), 1.0, 1e-15);
  EXPECT_NEAR((upper_extreme(ball) + lower_extreme(ball)).norm(), 0.0, 1e-15);
}

TEST(FitScaling, Examples) {
  const std::vector<ScalingPoint> one{{100, 0.0, 30.0}};
  EXPECT_DOUBLE_EQ(fit_scaling(one), 3.0);
  const std::vector<ScalingPoint> exact{{16, 3.0, 8.0}, {100, 0.0, 10.0}};
  EXPECT_DOUBLE_EQ(fit_scaling(exact), 1.0);
  EXPECT_THROW(fit_scaling(std::vector<ScalingPoint>{}), std::invalid_argument);
}

ExperimentConfig ratio_config() {
  ExperimentConfig c;
  c.seed = 11;
  InstanceConfig ic;
  ic.spec.family = CostFamily::kQuadratic;
  ic.spec.parameter = 1.0;
  ic.horizons = {40};
  ic.seeds = {1, 2};
  c.instances.push_back(ic);
  c.algorithms = {{AlgorithmKind::kNaive, std::nullopt}, {AlgorithmKind::kGreedy, std::nullopt}};
  c.oracle.method = OracleChoice::kGridDp;
  return c;
}

TEST(RunExperiment, EmptyInstanceListGivesEmptyReport) {
  ExperimentConfig c;
  c.algorithms = {{AlgorithmKind::kNaive, std::nullopt}};
  EXPECT_TRUE(run_experiment(c).rows.empty());
}

TEST(RunExperiment, RatioRows) {
  const ExperimentResult r = run_experiment(ratio_config());
  ASSERT_EQ(r.rows.size(), 4u);
  for (const ReportRow& row : r.rows) {
    ASSERT_TRUE(row.ratio && row.total_cost && row.oracle_cost);
    EXPECT_EQ(*row.ratio, *row.total_cost / *row.oracle_cost);
    ASSERT_TRUE(row.bound);
    EXPECT_EQ(*row.bound, row.algorithm == "greedy" ? 3.0 : 5.0);
    EXPECT_EQ(row.bound_satisfied, "true");
  }
  EXPECT_TRUE(r.all_satisfied());
}

TEST(RunExperiment, ThreadCountDoesNotChangeRows) {
  const ExperimentResult a = run_experiment(ratio_config(), 1);
  const ExperimentResult b = run_experiment(ratio_config(), 3);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].cell_id, b.rows[i].cell_id);
    EXPECT_EQ(a.rows[i].total_cost, b.rows[i].total_cost);
  }
}

TEST(RunExperiment, RegretRowsAndFits) {
  ExperimentConfig c;
  c.seed = 2;
  InstanceConfig ic;
  ic.spec.process = MinimizerProcess::kRandomWalk;
  ic.horizons = {64, 256};
  ic.seeds = {1};
  c.instances.push_back(ic);
  c.algorithms = {{AlgorithmKind::kSader, std::nullopt}, {AlgorithmKind::kLookaheadSader, std::nullopt}};
  c.comparators = {{ComparatorKind::kFixedPoint, 0.0, BudgetBasis::kAbsolute},
                   {ComparatorKind::kLazyTracking, 0.25, BudgetBasis::kSqrtTD}};
  c.oracle.method = OracleChoice::kNone;
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.rows.size(), 8u);
  for (const ReportRow& row : r.rows) {
    ASSERT_TRUE(row.regret && row.bound);
    EXPECT_LE(*row.regret, *row.bound);
  }
  EXPECT_EQ(r.fits.size(), 4u);
  for (const FitSummary& f : r.fits) EXPECT_TRUE(std::isfinite(f.value));
}

TEST(Enums, RoundTrip) {
  for (auto p : {MinimizerProcess::kIidUniform, MinimizerProcess::kRandomWalk, MinimizerProcess::kAlternatingExtremes,
                 MinimizerProcess::kStagePartitioned}) {
    EXPECT_EQ(parse_minimizer_process(to_string(p)), p);
  }
  for (auto a : {AlgorithmKind::kNaive, AlgorithmKind::kGreedy, AlgorithmKind::kSader, AlgorithmKind::kLookaheadSader}) {
    EXPECT_EQ(parse_algorithm_kind(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm_kind("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace smoothol
