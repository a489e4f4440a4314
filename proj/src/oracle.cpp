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

#include "smoothol/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace smoothol {

std::string_view to_string(OracleMethod method) {
  return method == OracleMethod::kGridDp ? "grid-dp" : "joint-convex";
}

namespace {

void check_inputs(std::span<const CostFunction> costs, const Domain& domain, const Point& start) {
  if (costs.empty()) throw std::invalid_argument("oracle: cost sequence is empty");
  check_point(start, "start");
  if (start.size() != domain.dimension()) throw std::invalid_argument("oracle: start dimension mismatch");
  if (!domain.contains(start, 1e-9)) throw std::invalid_argument("oracle: start is not feasible");
  for (const CostFunction& f : costs) {
    if (f.dimension() != domain.dimension()) throw std::invalid_argument("oracle: cost dimension mismatch");
  }
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = k == n - 1 ? hi : lo + (hi - lo) * (static_cast<double>(k) / (n - 1));
  return out;
}

// Grid points; for box domains the full tensor product with axis 0 varying
// fastest, for balls the bounding-box grid restricted to the ball.
struct Grid {
  std::vector<std::vector<double>> axes;
  std::vector<Point> points;
  bool tensor = false;
};

Grid make_grid(const Domain& domain, int n) {
  const int d = domain.dimension();
  Grid grid;
  Point lo;
  Point hi;
  if (domain.is_box()) {
    lo = domain.as_box().lower;
    hi = domain.as_box().upper;
  } else {
    const Ball& b = domain.as_ball();
    lo = b.center.array() - b.radius;
    hi = b.center.array() + b.radius;
  }
  for (int k = 0; k < d; ++k) grid.axes.push_back(linspace(lo[k], hi[k], n));
  grid.tensor = domain.is_box() || d == 1;

  std::int64_t total = 1;
  for (int k = 0; k < d; ++k) {
    total *= n;
    if (total > (std::int64_t{1} << 31)) throw ResourceError("grid DP: grid has more than 2^31 points");
  }
  std::vector<int> idx(d, 0);
  for (std::int64_t flat = 0; flat < total; ++flat) {
    Point p(d);
    for (int k = 0; k < d; ++k) p[k] = grid.axes[k][idx[k]];
    if (grid.tensor || domain.contains(p, 0.0)) grid.points.push_back(std::move(p));
    for (int k = 0; k < d; ++k) {
      if (++idx[k] < n) break;
      idx[k] = 0;
    }
  }
  if (grid.points.empty()) throw std::invalid_argument("grid DP: no grid point lies in the domain");
  return grid;
}

// Running-minimum transform for 1-D l2 transitions on a sorted axis.
void transform_l2_1d(const std::vector<double>& x, const std::vector<double>& v, std::vector<int>& src) {
  const int n = static_cast<int>(x.size());
  std::vector<int> fwd(n);
  std::vector<int> bwd(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] - x[i] < v[best] - x[best]) best = i;
    fwd[i] = best;
  }
  best = n - 1;
  for (int i = n - 1; i >= 0; --i) {
    if (v[i] + x[i] < v[best] + x[best]) best = i;
    bwd[i] = best;
  }
  for (int i = 0; i < n; ++i) {
    const double a = v[fwd[i]] + std::abs(x[i] - x[fwd[i]]);
    const double b = v[bwd[i]] + std::abs(x[i] - x[bwd[i]]);
    src[i] = b < a || (b == a && bwd[i] < fwd[i]) ? bwd[i] : fwd[i];
  }
}

// Lower envelope of parabolas for min_j f[j] + (x_i - x_j)^2 / 2 along one
// sorted axis. Writes the minimizing j and the envelope value.
void envelope_half_squared(const std::vector<double>& x, const std::vector<double>& f, std::vector<int>& arg,
                           std::vector<double>& out) {
  const int n = static_cast<int>(x.size());
  // Lines y = a_j z + b_j with a_j = -x_j (decreasing), b_j = f_j + x_j^2 / 2.
  auto a = [&](int j) { return -x[j]; };
  auto b = [&](int j) { return f[j] + 0.5 * x[j] * x[j]; };
  std::vector<int> hull;
  hull.reserve(n);
  for (int j = 0; j < n; ++j) {
    while (hull.size() >= 2) {
      const int l1 = hull[hull.size() - 2];
      const int l2 = hull.back();
      if ((b(j) - b(l1)) * (a(l1) - a(l2)) <= (b(l2) - b(l1)) * (a(l1) - a(j))) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(j);
  }
  std::size_t p = 0;
  for (int i = 0; i < n; ++i) {
    const double z = x[i];
    while (p + 1 < hull.size() && a(hull[p + 1]) * z + b(hull[p + 1]) <= a(hull[p]) * z + b(hull[p])) ++p;
    arg[i] = hull[p];
    const double dz = z - x[hull[p]];
    out[i] = f[hull[p]] + 0.5 * dz * dz;
  }
}

// Separable half-squared transform on a tensor grid, one axis at a time.
void transform_half_squared_tensor(const Grid& grid, const std::vector<double>& v, std::vector<int>& src) {
  const int d = static_cast<int>(grid.axes.size());
  const int n = static_cast<int>(grid.axes[0].size());
  const std::size_t total = v.size();
  std::vector<double> cur = v;
  for (std::size_t i = 0; i < total; ++i) src[i] = static_cast<int>(i);
  std::vector<double> line_f(n);
  std::vector<double> line_out(n);
  std::vector<int> line_arg(n);
  std::vector<double> next(total);
  std::vector<int> next_src(total);
  std::size_t stride = 1;
  for (int k = 0; k < d; ++k) {
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t first = base + off;
        for (int j = 0; j < n; ++j) line_f[j] = cur[first + j * stride];
        envelope_half_squared(grid.axes[k], line_f, line_arg, line_out);
        for (int i = 0; i < n; ++i) {
          next[first + i * stride] = line_out[i];
          next_src[first + i * stride] = src[first + line_arg[i] * stride];
        }
      }
    }
    cur.swap(next);
    src.swap(next_src);
    stride = block;
  }
}

void transform_brute(const std::vector<Point>& pts, const std::vector<double>& v, const SwitchingCost& m,
                     std::vector<int>& src) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = v[j] + m(pts[i], pts[j]);
      if (c < best) {
        best = c;
        arg = static_cast<int>(j);
      }
    }
    src[i] = arg;
  }
}

}  // namespace

double grid_covering_radius(const Domain& domain, int points_per_axis) {
  if (points_per_axis < 2) throw std::invalid_argument("points_per_axis must be >= 2");
  const int d = domain.dimension();
  double h2 = 0.0;
  for (int k = 0; k < d; ++k) {
    const double extent = domain.is_box() ? domain.as_box().upper[k] - domain.as_box().lower[k]
                                          : 2.0 * domain.as_ball().radius;
    const double h = extent / (points_per_axis - 1);
    h2 += h * h;
  }
  const double h_diag = std::sqrt(h2);
  if (domain.is_box() || d == 1) return 0.5 * h_diag;
  // A feasible point pulled h_diag toward the center lies in a grid cell that
  // is entirely inside the ball.
  return std::min(2.0 * h_diag, domain.diameter());
}

double sequence_cost(std::span<const Point> seq, std::span<const CostFunction> costs, const Point& start,
                     const SwitchingCost& m) {
  if (seq.size() != costs.size()) throw std::invalid_argument("sequence_cost: length mismatch");
  double hit = 0.0;
  double sw = 0.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    hit += costs[t].value(seq[t]);
    sw += m(seq[t], t == 0 ? start : seq[t - 1]);
  }
  return hit + sw;
}

OracleResult offline_optimal_grid_dp(std::span<const CostFunction> costs, const Domain& domain, const Point& start,
                                     const SwitchingCost& m, const GridDpSettings& settings) {
  check_inputs(costs, domain, start);
  if (settings.points_per_axis < 2) throw std::invalid_argument("grid DP: points_per_axis must be >= 2");
  if (settings.max_pairs_per_stage < 1) throw std::invalid_argument("grid DP: pair cap must be >= 1");

  const Grid grid = make_grid(domain, settings.points_per_axis);
  const std::size_t n = grid.points.size();
  const int d = domain.dimension();

  enum class Kind { kL2Line, kHalfSquaredTensor, kBrute };
  Kind kind = Kind::kBrute;
  if (settings.transform == DpTransform::kAuto && grid.tensor) {
    if (d == 1) {
      kind = m.kind == SwitchingKind::kL2 ? Kind::kL2Line : Kind::kHalfSquaredTensor;
    } else if (m.kind == SwitchingKind::kHalfSquaredL2) {
      kind = Kind::kHalfSquaredTensor;
    }
  }
  const double pairs = kind == Kind::kBrute ? static_cast<double>(n) * static_cast<double>(n)
                                            : 2.0 * static_cast<double>(n) * d;
  if (pairs > static_cast<double>(settings.max_pairs_per_stage)) {
    throw ResourceError("grid DP: " + std::to_string(static_cast<long long>(pairs)) +
                        " transition pairs per stage exceed the cap of " +
                        std::to_string(settings.max_pairs_per_stage));
  }

  const std::size_t T = costs.size();
  std::vector<std::vector<int>> parent(T);
  std::vector<double> value(n);
  for (std::size_t i = 0; i < n; ++i) value[i] = m(grid.points[i], start) + costs[0].value(grid.points[i]);

  std::vector<int> src(n);
  std::vector<double> next(n);
  for (std::size_t t = 1; t < T; ++t) {
    switch (kind) {
      case Kind::kL2Line:
        transform_l2_1d(grid.axes[0], value, src);
        break;
      case Kind::kHalfSquaredTensor:
        transform_half_squared_tensor(grid, value, src);
        break;
      case Kind::kBrute:
        transform_brute(grid.points, value, m, src);
        break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = value[src[i]] + m(grid.points[i], grid.points[src[i]]) + costs[t].value(grid.points[i]);
    }
    parent[t] = src;
    value.swap(next);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (value[i] < value[best]) best = i;
  }
  OracleResult out;
  out.method = OracleMethod::kGridDp;
  out.grid_resolution = settings.points_per_axis;
  out.trace.start = start;
  out.trace.switching_cost = m;
  out.trace.decisions.resize(T);
  std::size_t cur = best;
  for (std::size_t t = T; t-- > 0;) {
    out.trace.decisions[t] = grid.points[cur];
    if (t > 0) cur = static_cast<std::size_t>(parent[t][cur]);
  }
  fill_costs(out.trace, costs);

  double lf = 0.0;
  bool smooth = m.kind == SwitchingKind::kHalfSquaredL2 && grid.tensor;
  double curvature = 0.0;
  for (const CostFunction& f : costs) {
    lf = std::max(lf, gradient_bound(f, domain));
    smooth = smooth && f.family() != CostFamily::kPolyhedralNorm;
    curvature = std::max(curvature, f.max_curvature());
  }
  const double rho = grid_covering_radius(domain, settings.points_per_axis);
  out.slack = (lf + 2.0 * m.lipschitz(domain.diameter())) * rho * static_cast<double>(T);
  if (smooth) {
    // Box bounds are grid points, so rounding the continuous optimum moves
    // only coordinates with zero partial derivative. The joint Hessian is
    // at most max curvature + 4 (path Laplacian).
    out.slack = std::min(out.slack, 0.5 * (curvature + 4.0) * rho * rho * static_cast<double>(T));
  }
  return out;
}

OracleResult offline_optimal_convex(std::span<const CostFunction> costs, const Domain& domain, const Point& start,
                                    const SwitchingCost& m, const ConvexOracleSettings& settings) {
  check_inputs(costs, domain, start);
  if (settings.max_sweeps < 1) throw std::invalid_argument("convex oracle: max_sweeps must be >= 1");
  if (!(settings.tolerance > 0.0)) throw std::invalid_argument("convex oracle: tolerance must be > 0");
  settings.block.validate();

  const std::size_t T = costs.size();
  std::vector<Point> u;
  u.reserve(T);
  for (const CostFunction& f : costs) u.push_back(minimize_cost(f, domain, settings.block));

  auto block_value = [&](std::size_t t, const Point& x) {
    double v = costs[t].value(x) + m(x, t == 0 ? start : u[t - 1]);
    if (t + 1 < T) v += m(u[t + 1], x);
    return v;
  };
  auto solve_block = [&](std::size_t t) {
    const Point& left = t == 0 ? start : u[t - 1];
    SolveResult r;
    if (m.kind == SwitchingKind::kHalfSquaredL2) {
      if (t + 1 < T) {
        const Point mid = domain.project(0.5 * (left + u[t + 1]));
        r = prox_step(costs[t], mid, 2.0, m, domain, settings.block);
      } else {
        r = prox_step(costs[t], left, 1.0, m, domain, settings.block);
      }
    } else {
      Objective obj;
      obj.value = [&](const Point& x) { return block_value(t, x); };
      obj.subgradient = [&](const Point& x) -> Point {
        Point g = costs[t].subgradient(x);
        const Point dl = x - left;
        if (const double nl = dl.norm(); nl > 0.0) g += dl / nl;
        if (t + 1 < T) {
          const Point dr = x - u[t + 1];
          if (const double nr = dr.norm(); nr > 0.0) g += dr / nr;
        }
        return g;
      };
      obj.gradient_bound = gradient_bound(costs[t], domain) + 2.0;
      r = projected_subgradient(obj, domain, u[t], settings.block);
    }
    // Keep the objective monotone even when an inner solve is inexact.
    if (block_value(t, r.point) < block_value(t, u[t])) u[t] = std::move(r.point);
  };

  OracleResult out;
  out.method = OracleMethod::kJointConvex;
  double objective = sequence_cost(u, costs, start, m);
  out.converged = false;
  out.convergence_gap = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < settings.max_sweeps; ++sweep) {
    for (std::size_t t = 0; t < T; ++t) solve_block(t);
    for (std::size_t t = T; t-- > 0;) solve_block(t);
    const double next = sequence_cost(u, costs, start, m);
    out.convergence_gap = objective - next;
    objective = next;
    if (out.convergence_gap < settings.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.trace.start = start;
  out.trace.switching_cost = m;
  out.trace.decisions = std::move(u);
  fill_costs(out.trace, costs);
  return out;
}

}  // namespace smoothol
