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

#include "smoothol/costs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "smoothol/rng.hpp"

namespace smoothol {

std::string_view to_string(CostFamily family) {
  switch (family) {
    case CostFamily::kPolyhedralNorm:
      return "polyhedral-norm";
    case CostFamily::kQuadratic:
      return "quadratic";
    case CostFamily::kGeneralQuadratic:
      return "general-quadratic";
  }
  return "?";
}

CostFamily parse_cost_family(std::string_view name) {
  if (name == "polyhedral-norm") return CostFamily::kPolyhedralNorm;
  if (name == "quadratic") return CostFamily::kQuadratic;
  if (name == "general-quadratic") return CostFamily::kGeneralQuadratic;
  throw std::invalid_argument("unknown cost family '" + std::string(name) + "'");
}

namespace {

void check_parameter(double p, const char* name) {
  if (!std::isfinite(p) || p <= 0.0) throw std::invalid_argument(std::string(name) + " must be finite and > 0");
}

void check_offset(double c) {
  if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("offset c must be finite and >= 0");
}

}  // namespace

CostFunction CostFunction::polyhedral(double alpha, Point v, double offset) {
  check_parameter(alpha, "alpha");
  check_point(v, "minimizer");
  check_offset(offset);
  CostFunction f;
  f.family_ = CostFamily::kPolyhedralNorm;
  f.param_ = alpha;
  f.v_ = std::move(v);
  f.offset_ = offset;
  return f;
}

CostFunction CostFunction::quadratic(double lambda, Point v, double offset) {
  check_parameter(lambda, "lambda");
  check_point(v, "minimizer");
  check_offset(offset);
  CostFunction f;
  f.family_ = CostFamily::kQuadratic;
  f.param_ = lambda;
  f.h_min_ = lambda;
  f.h_max_ = lambda;
  f.v_ = std::move(v);
  f.offset_ = offset;
  return f;
}

CostFunction CostFunction::general_quadratic(Eigen::MatrixXd curvature, double lambda, Point v, double offset) {
  check_parameter(lambda, "lambda");
  check_point(v, "minimizer");
  check_offset(offset);
  if (curvature.rows() != v.size() || curvature.cols() != v.size()) {
    throw std::invalid_argument("curvature matrix must be d x d with d = dim(v)");
  }
  if (!curvature.allFinite()) throw std::invalid_argument("curvature matrix has non-finite entries");
  const double scale = std::max(1.0, curvature.cwiseAbs().maxCoeff());
  if ((curvature - curvature.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("curvature matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(curvature, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
    throw std::invalid_argument("curvature matrix must be positive semidefinite");
  }
  CostFunction f;
  f.family_ = CostFamily::kGeneralQuadratic;
  f.param_ = lambda;
  f.h_ = std::move(curvature);
  f.h_min_ = eig.eigenvalues().minCoeff();
  f.h_max_ = eig.eigenvalues().maxCoeff();
  f.v_ = std::move(v);
  f.offset_ = offset;
  return f;
}

void CostFunction::check_dim(const Point& x) const {
  if (x.size() != v_.size()) {
    throw std::invalid_argument("dimension mismatch: cost has d=" + std::to_string(v_.size()) + ", point has " +
                                std::to_string(x.size()));
  }
}

double CostFunction::value(const Point& x) const {
  check_dim(x);
  switch (family_) {
    case CostFamily::kPolyhedralNorm:
      return param_ * (x - v_).norm() + offset_;
    case CostFamily::kQuadratic:
      return 0.5 * param_ * (x - v_).squaredNorm() + offset_;
    case CostFamily::kGeneralQuadratic: {
      const Point r = x - v_;
      return 0.5 * r.dot(h_ * r) + offset_;
    }
  }
  return 0.0;
}

Point CostFunction::subgradient(const Point& x) const {
  check_dim(x);
  switch (family_) {
    case CostFamily::kPolyhedralNorm: {
      const Point r = x - v_;
      const double n = r.norm();
      if (n == 0.0) return Point::Zero(x.size());
      return r * (param_ / n);
    }
    case CostFamily::kQuadratic:
      return param_ * (x - v_);
    case CostFamily::kGeneralQuadratic:
      return h_ * (x - v_);
  }
  return Point::Zero(x.size());
}

std::string_view to_string(SwitchingKind kind) {
  return kind == SwitchingKind::kL2 ? "l2" : "half-squared-l2";
}

SwitchingKind parse_switching_kind(std::string_view name) {
  if (name == "l2") return SwitchingKind::kL2;
  if (name == "half-squared-l2") return SwitchingKind::kHalfSquaredL2;
  throw std::invalid_argument("unknown switching cost '" + std::string(name) + "'");
}

double SwitchingCost::operator()(const Point& x, const Point& y) const {
  if (x.size() != y.size()) throw std::invalid_argument("switching cost: dimension mismatch");
  if (kind == SwitchingKind::kL2) return (x - y).norm();
  return 0.5 * (x - y).squaredNorm();
}

double switch_cost(const SwitchingCost& m, const Point& x, const Point& y) { return m(x, y); }

bool verify_class(const CostFunction& f, const Domain& domain, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("verify_class: n_samples must be >= 1");
  if (f.dimension() != domain.dimension()) throw std::invalid_argument("verify_class: dimension mismatch");
  constexpr double kTol = 1e-9;
  const Point& v = f.minimizer();
  const double fv = f.value(v);
  auto holds = [&](const Point& x) {
    const double gap = f.value(x) - fv;
    const double dist = (x - v).norm();
    const double required =
        f.family() == CostFamily::kPolyhedralNorm ? f.parameter() * dist : 0.5 * f.parameter() * dist * dist;
    return gap >= required - kTol;
  };

  // Deterministic probes: the feasible point nearest v, and the extreme
  // points of the domain along every axis through its center.
  std::vector<Point> probes{domain.project(v)};
  const Point c = domain.center();
  const double reach = domain.diameter();
  for (int i = 0; i < domain.dimension(); ++i) {
    for (double s : {-1.0, 1.0}) {
      Point p = c;
      p[i] += s * reach;
      probes.push_back(domain.project(p));
    }
  }
  for (const Point& p : probes) {
    if (!holds(p)) return false;
  }

  Rng rng(seed);
  for (int k = 0; k < n_samples; ++k) {
    Point x = sample_in_domain(domain, rng);
    if (k % 2 == 1) {
      // pull every other sample toward v so the local growth rate is probed too
      const double t = rng.uniform01();
      x = domain.project(v + t * t * (x - v));
    }
    if (!holds(x)) return false;
  }
  return true;
}

double gradient_bound(const CostFunction& f, const Domain& domain) {
  if (f.dimension() != domain.dimension()) throw std::invalid_argument("gradient_bound: dimension mismatch");
  switch (f.family()) {
    case CostFamily::kPolyhedralNorm:
      return f.parameter();
    case CostFamily::kQuadratic:
      return f.parameter() * domain.max_distance_from(f.minimizer());
    case CostFamily::kGeneralQuadratic:
      return f.max_curvature() * domain.max_distance_from(f.minimizer());
  }
  return 0.0;
}

}  // namespace smoothol
