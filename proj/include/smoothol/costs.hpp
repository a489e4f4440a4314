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

#ifndef SMOOTHOL_COSTS_HPP_
#define SMOOTHOL_COSTS_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "smoothol/geometry.hpp"

namespace smoothol {

enum class CostFamily { kPolyhedralNorm, kQuadratic, kGeneralQuadratic };

std::string_view to_string(CostFamily family);
CostFamily parse_cost_family(std::string_view name);

/// One round's hitting cost with an explicitly stored minimizer.
///
///   polyhedral-norm:    f(x) = alpha * ||x - v|| + c
///   quadratic:          f(x) = (lambda / 2) * ||x - v||^2 + c
///   general-quadratic:  f(x) = 1/2 (x - v)^T H (x - v) + c,  H symmetric, H >= lambda I
///
/// Instances are immutable once built.
class CostFunction {
 public:
  static CostFunction polyhedral(double alpha, Point v, double offset = 0.0);
  static CostFunction quadratic(double lambda, Point v, double offset = 0.0);
  /// `lambda` is the declared growth parameter; it is not checked against the
  /// spectrum of H here (see `verify_class`).
  static CostFunction general_quadratic(Eigen::MatrixXd curvature, double lambda, Point v, double offset = 0.0);

  CostFamily family() const { return family_; }
  const Point& minimizer() const { return v_; }
  double offset() const { return offset_; }
  int dimension() const { return static_cast<int>(v_.size()); }
  /// alpha for polyhedral-norm, lambda otherwise.
  double parameter() const { return param_; }
  const Eigen::MatrixXd& curvature() const { return h_; }
  /// Extreme eigenvalues of H (lambda, lambda for the isotropic quadratic).
  double min_curvature() const { return h_min_; }
  double max_curvature() const { return h_max_; }

  double value(const Point& x) const;
  /// Zero at the kink of the polyhedral family.
  Point subgradient(const Point& x) const;

 private:
  CostFunction() = default;
  void check_dim(const Point& x) const;

  CostFamily family_ = CostFamily::kQuadratic;
  Point v_;
  double param_ = 0.0;
  double offset_ = 0.0;
  Eigen::MatrixXd h_;
  double h_min_ = 0.0;
  double h_max_ = 0.0;
};

inline double value(const CostFunction& f, const Point& x) { return f.value(x); }
inline Point subgradient(const CostFunction& f, const Point& x) { return f.subgradient(x); }

enum class SwitchingKind { kL2, kHalfSquaredL2 };

std::string_view to_string(SwitchingKind kind);
SwitchingKind parse_switching_kind(std::string_view name);

struct SwitchingCost {
  SwitchingKind kind = SwitchingKind::kL2;

  double operator()(const Point& x, const Point& y) const;
  /// Lipschitz constant of m(., y) over a set of diameter D.
  double lipschitz(double diameter) const { return kind == SwitchingKind::kL2 ? 1.0 : diameter; }
};

double switch_cost(const SwitchingCost& m, const Point& x, const Point& y);

/// Samples `n_samples` feasible points (deterministic in `seed`) and checks the
/// growth inequality of the declared class at each, to within 1e-9:
///   polyhedral:  f(x) - f(v) >= alpha ||x - v||
///   quadratic:   f(x) - f(v) >= lambda / 2 ||x - v||^2
/// The samples always include v's projection, the domain corners/poles along
/// each axis, and points near v.
bool verify_class(const CostFunction& f, const Domain& domain, int n_samples, std::uint64_t seed);

/// Upper bound on sup_{x in domain} ||subgradient(x)||.
double gradient_bound(const CostFunction& f, const Domain& domain);

}  // namespace smoothol

#endif  // SMOOTHOL_COSTS_HPP_
