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

#ifndef SMOOTHOL_GEOMETRY_HPP_
#define SMOOTHOL_GEOMETRY_HPP_

#include <Eigen/Dense>
#include <string>
#include <variant>

namespace smoothol {

/// A decision vector. Always finite and of dimension >= 1 when it comes out of
/// this library; use `make_point` to validate user input.
using Point = Eigen::VectorXd;

Point make_point(std::initializer_list<double> coords);

/// Throws std::invalid_argument unless `p` is nonempty with finite entries.
void check_point(const Point& p, const char* what = "point");

struct Box {
  Point lower;
  Point upper;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// A bounded convex feasible set with an exact Euclidean projection.
///
/// Only axis-aligned boxes and Euclidean balls are supported; both have closed
/// form projections, so every feasibility statement made downstream is exact
/// up to rounding.
class Domain {
 public:
  static Domain box(Point lower, Point upper);
  static Domain ball(Point center, double radius);
  /// [lo, hi]^d
  static Domain cube(int dimension, double lo, double hi);

  int dimension() const;
  bool is_box() const { return std::holds_alternative<Box>(shape_); }
  bool is_ball() const { return std::holds_alternative<Ball>(shape_); }
  const Box& as_box() const { return std::get<Box>(shape_); }
  const Ball& as_ball() const { return std::get<Ball>(shape_); }

  /// Nearest feasible point in l2. Idempotent, and the identity on feasible
  /// points.
  Point project(const Point& p) const;
  /// Exact sup distance between feasible points.
  double diameter() const;
  Point center() const;
  bool contains(const Point& p, double tol = 1e-12) const;
  /// max over feasible x of ||x - p||, attained at a corner (box) or on the
  /// far side of the sphere (ball).
  double max_distance_from(const Point& p) const;
  /// Distance from `w` to the normal cone of the domain at feasible `x`.
  double distance_to_normal_cone(const Point& x, const Point& w) const;

  std::string describe() const;

 private:
  explicit Domain(std::variant<Box, Ball> shape) : shape_(std::move(shape)) {}
  void check_dim(const Point& p) const;

  std::variant<Box, Ball> shape_;
};

inline Point project(const Domain& domain, const Point& p) { return domain.project(p); }
inline double diameter(const Domain& domain) { return domain.diameter(); }

}  // namespace smoothol

#endif  // SMOOTHOL_GEOMETRY_HPP_
