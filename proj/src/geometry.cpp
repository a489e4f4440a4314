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

#include "smoothol/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace smoothol {

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p[i++] = c;
  check_point(p);
  return p;
}

void check_point(const Point& p, const char* what) {
  if (p.size() < 1) throw std::invalid_argument(std::string(what) + ": dimension must be >= 1");
  if (!p.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

Domain Domain::box(Point lower, Point upper) {
  check_point(lower, "box lower");
  check_point(upper, "box upper");
  if (lower.size() != upper.size()) throw std::invalid_argument("box: lower/upper dimension mismatch");
  if ((lower.array() > upper.array()).any()) throw std::invalid_argument("box: lower > upper");
  return Domain(Box{std::move(lower), std::move(upper)});
}

Domain Domain::ball(Point center, double radius) {
  check_point(center, "ball center");
  if (!std::isfinite(radius) || radius < 0.0) throw std::invalid_argument("ball: radius must be finite and >= 0");
  return Domain(Ball{std::move(center), radius});
}

Domain Domain::cube(int dimension, double lo, double hi) {
  if (dimension < 1) throw std::invalid_argument("cube: dimension must be >= 1");
  return box(Point::Constant(dimension, lo), Point::Constant(dimension, hi));
}

int Domain::dimension() const {
  return static_cast<int>(is_box() ? as_box().lower.size() : as_ball().center.size());
}

void Domain::check_dim(const Point& p) const {
  if (p.size() != dimension()) {
    throw std::invalid_argument("dimension mismatch: got " + std::to_string(p.size()) + ", domain has " +
                                std::to_string(dimension()));
  }
}

Point Domain::project(const Point& p) const {
  check_dim(p);
  if (is_box()) {
    const Box& b = as_box();
    return p.cwiseMax(b.lower).cwiseMin(b.upper);
  }
  const Ball& b = as_ball();
  Point offset = p - b.center;
  const double norm = offset.norm();
  // A few ulps of slack so that projecting a projected point is a no-op.
  if (norm <= b.radius * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) return p;
  return b.center + offset * (b.radius / norm);
}

double Domain::diameter() const {
  if (is_box()) return (as_box().upper - as_box().lower).norm();
  return 2.0 * as_ball().radius;
}

Point Domain::center() const {
  if (is_box()) return 0.5 * (as_box().lower + as_box().upper);
  return as_ball().center;
}

bool Domain::contains(const Point& p, double tol) const {
  check_dim(p);
  if (is_box()) {
    const Box& b = as_box();
    return ((p.array() >= b.lower.array() - tol) && (p.array() <= b.upper.array() + tol)).all();
  }
  return (p - as_ball().center).norm() <= as_ball().radius + tol;
}

double Domain::max_distance_from(const Point& p) const {
  check_dim(p);
  if (is_box()) {
    const Box& b = as_box();
    const Eigen::ArrayXd far = (p - b.lower).cwiseAbs().cwiseMax((p - b.upper).cwiseAbs()).array();
    return std::sqrt((far * far).sum());
  }
  return (p - as_ball().center).norm() + as_ball().radius;
}

double Domain::distance_to_normal_cone(const Point& x, const Point& w) const {
  check_dim(x);
  check_dim(w);
  if (is_box()) {
    const Box& b = as_box();
    double sq = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const bool at_lo = x[i] <= b.lower[i];
      const bool at_hi = x[i] >= b.upper[i];
      double r = w[i];
      if (at_lo && at_hi) {
        r = 0.0;  // degenerate side: the cone is the whole axis
      } else if (at_hi) {
        r = std::min(w[i], 0.0);
      } else if (at_lo) {
        r = std::max(w[i], 0.0);
      }
      sq += r * r;
    }
    return std::sqrt(sq);
  }
  const Ball& b = as_ball();
  Point n = x - b.center;
  const double nn = n.norm();
  if (nn < b.radius || nn == 0.0) return b.radius == 0.0 ? 0.0 : w.norm();
  n /= nn;
  const double along = w.dot(n);
  if (along <= 0.0) return w.norm();
  return (w - along * n).norm();
}

std::string Domain::describe() const {
  std::ostringstream os;
  if (is_box()) {
    os << "box[" << as_box().lower.transpose() << " | " << as_box().upper.transpose() << "]";
  } else {
    os << "ball[c=" << as_ball().center.transpose() << ", r=" << as_ball().radius << "]";
  }
  return os.str();
}

}  // namespace smoothol
