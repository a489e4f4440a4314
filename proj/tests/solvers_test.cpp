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

#include "smoothol/rng.hpp"
#include "smoothol/solvers.hpp"

namespace smoothol {
namespace {

const SwitchingCost kHalf{SwitchingKind::kHalfSquaredL2};

TEST(MinimizeCost, Examples) {
  const Domain ball = Domain::ball(Point::Zero(2), 1.0);
  EXPECT_EQ(minimize_cost(CostFunction::quadratic(1.0, make_point({0.5, 0})), ball), make_point({0.5, 0}));
  const Point p = minimize_cost(CostFunction::polyhedral(1.0, make_point({3, 4})), ball);
  EXPECT_NEAR(p[0], 0.6, 1e-15);
  EXPECT_NEAR(p[1], 0.8, 1e-15);
  EXPECT_EQ(minimize_cost(CostFunction::quadratic(1.0, make_point({2, 2})), Domain::cube(2, -1, 1)),
            make_point({1, 1}));
}

TEST(MinimizeCost, AnisotropicInfeasibleMinimizerIsNotTheProjection) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(2, 2);
  h(0, 1) = h(1, 0) = 0.9;
  const CostFunction f = CostFunction::general_quadratic(h, 0.1, make_point({2.0, 0.0}));
  const Domain box = Domain::cube(2, -1, 1);
  const Point x = minimize_cost(f, box);
  EXPECT_TRUE(box.contains(x, 1e-12));
  EXPECT_LT(f.value(x), f.value(box.project(f.minimizer())) - 1e-3);
  // Projected-gradient fixed point: x = P(x - grad).
  EXPECT_LE((box.project(x - f.subgradient(x)) - x).norm(), 1e-6);
}

TEST(ProxStep, Examples) {
  const Domain ball = Domain::ball(Point::Zero(2), 1.0);
  const SolveResult a = prox_step(CostFunction::quadratic(1.0, make_point({1, 0})), Point::Zero(2), 1.0, kHalf, ball);
  EXPECT_NEAR((a.point - make_point({0.5, 0})).norm(), 0.0, 1e-15);
  const SolveResult b = prox_step(CostFunction::quadratic(2.0, make_point({3, 0})), Point::Zero(2), 1.0, kHalf, ball);
  EXPECT_NEAR((b.point - make_point({1, 0})).norm(), 0.0, 1e-15);
}

TEST(ProxStep, MinimizerAtAnchorReturnsAnchor) {
  const Domain box = Domain::cube(2, -1, 1);
  const Point anchor = make_point({0.3, -0.4});
  Eigen::MatrixXd h = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  for (const CostFunction& f : {CostFunction::polyhedral(1.0, anchor), CostFunction::quadratic(1.0, anchor),
                                CostFunction::general_quadratic(h, 2.0, anchor)}) {
    EXPECT_LE((prox_step(f, anchor, 0.7, kHalf, box).point - anchor).norm(), 1e-9);
  }
}

TEST(ProxStep, RejectsBadInputs) {
  const Domain box = Domain::cube(1, -1, 1);
  const CostFunction f = CostFunction::quadratic(1.0, Point::Zero(1));
  EXPECT_THROW(prox_step(f, make_point({2.0}), 1.0, kHalf, box), std::invalid_argument);
  EXPECT_THROW(prox_step(f, Point::Zero(1), 0.0, kHalf, box), std::invalid_argument);
  EXPECT_THROW(prox_step(f, Point::Zero(1), 1.0, SwitchingCost{SwitchingKind::kL2}, box), std::invalid_argument);
}

TEST(ProxStep, LargeWeightStaysNearAnchor) {
  Rng rng(11);
  const Domain box = Domain::cube(2, -1, 1);
  for (int k = 0; k < 50; ++k) {
    const Point anchor = sample_in_domain(box, rng);
    const Point v = 2.0 * sample_in_domain(box, rng);
    for (const CostFunction& f : {CostFunction::polyhedral(2.0, v), CostFunction::quadratic(2.0, v)}) {
      EXPECT_LE((prox_step(f, anchor, 1e6, kHalf, box).point - anchor).norm(), 1e-3);
    }
  }
}

TEST(ProxStep, ReportsNonConvergenceAsData) {
  SolverSettings tight;
  tight.max_iterations = 1;
  tight.tolerance = 1e-15;
  const Domain box = Domain::cube(2, -1, 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(2, 2);
  h(0, 0) = 50.0;
  const CostFunction f = CostFunction::general_quadratic(h, 1.0, make_point({0.9, 0.9}));
  const SolveResult r = prox_step(f, make_point({-1, -1}), 0.5, kHalf, box, tight);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(box.contains(r.point, 1e-12));
}

TEST(ProjectedSubgradient, Examples) {
  const Domain box = Domain::cube(2, -1, 1);
  Objective sq;
  sq.value = [](const Point& x) { return x.squaredNorm(); };
  sq.subgradient = [](const Point& x) -> Point { return 2.0 * x; };
  sq.gradient_bound = 2.0 * std::sqrt(2.0);
  SolverSettings s;
  s.step_rule = StepRule::kConstant;
  s.base_step = 0.25;
  EXPECT_LE(projected_subgradient(sq, box, make_point({1, 1}), s).point.norm(), 1e-6);

  const Domain ball = Domain::ball(Point::Zero(2), 1.0);
  const Point target = make_point({2, 0});
  Objective dist;
  dist.value = [&](const Point& x) { return (x - target).norm(); };
  dist.subgradient = [&](const Point& x) -> Point { return (x - target) / (x - target).norm(); };
  dist.gradient_bound = 1.0;
  EXPECT_LE((projected_subgradient(dist, ball, make_point({0, 1})).point - make_point({1, 0})).norm(), 1e-4);

  const SolveResult at_min = projected_subgradient(sq, box, Point::Zero(2));
  EXPECT_TRUE(at_min.converged);
  EXPECT_EQ(at_min.point, Point::Zero(2));
}

TEST(ProjectedSubgradient, RequiresFeasibleInit) {
  Objective sq;
  sq.value = [](const Point& x) { return x.squaredNorm(); };
  sq.subgradient = [](const Point& x) -> Point { return 2.0 * x; };
  EXPECT_THROW(projected_subgradient(sq, Domain::cube(1, -1, 1), make_point({3})), std::invalid_argument);
}

TEST(SolverSettings, Validation) {
  SolverSettings s;
  s.max_iterations = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = SolverSettings{};
  s.tolerance = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(ProxStep, ClosedFormAgreesWithIterative) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const Domain dom = k % 2 ? Domain::cube(d, -1, 1) : Domain::ball(Point::Zero(d), 1.0);
    const CostFunction f = CostFunction::quadratic(rng.uniform(0.1, 5), 2.0 * sample_in_domain(dom, rng));
    const Point anchor = sample_in_domain(dom, rng);
    const double gamma = rng.uniform(0.1, 5);
    SolverSettings s;
    s.max_iterations = 100000;
    s.tolerance = 1e-12;
    const Point closed = prox_step(f, anchor, gamma, kHalf, dom).point;
    const Point iter = prox_step_iterative(f, anchor, gamma, dom, s).point;
    EXPECT_LE((closed - iter).norm(), 1e-6) << "case " << k;
  }
}

TEST(ProxStep, StrongConvexityOptimality) {
  Rng rng(6);
  for (int k = 0; k < 120; ++k) {
    const int d = 1 + static_cast<int>(rng.below(3));
    const Domain dom = k % 2 ? Domain::cube(d, -1, 1) : Domain::ball(Point::Zero(d), 1.0);
    const Point v = 1.5 * sample_in_domain(dom, rng);
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
    }
    Eigen::MatrixXd h = a * a.transpose() + Eigen::MatrixXd::Identity(d, d);
    h = 0.5 * (h + h.transpose());
    const CostFunction f = k % 3 == 0   ? CostFunction::polyhedral(rng.uniform(0.2, 4), v)
                           : k % 3 == 1 ? CostFunction::quadratic(rng.uniform(0.2, 4), v)
                                        : CostFunction::general_quadratic(h, 1.0, v);
    const Point anchor = sample_in_domain(dom, rng);
    const double gamma = rng.uniform(0.1, 10);
    const SolveResult r = prox_step(f, anchor, gamma, kHalf, dom);
    EXPECT_TRUE(r.converged);
    const Point& x = r.point;
    for (int j = 0; j < 100; ++j) {
      const Point u = sample_in_domain(dom, rng);
      const double lhs = f.value(x) + 0.5 * gamma * (x - anchor).squaredNorm() + 0.5 * gamma * (u - x).squaredNorm();
      const double rhs = f.value(u) + 0.5 * gamma * (u - anchor).squaredNorm() + 1e-6;
      EXPECT_LE(lhs, rhs);
    }
  }
}

}  // namespace
}  // namespace smoothol
