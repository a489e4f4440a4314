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

#ifndef SMOOTHOL_ORACLE_HPP_
#define SMOOTHOL_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "smoothol/competitive.hpp"
#include "smoothol/costs.hpp"
#include "smoothol/geometry.hpp"
#include "smoothol/solvers.hpp"

namespace smoothol {

/// Raised when a requested computation exceeds a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OracleMethod { kGridDp, kJointConvex };
std::string_view to_string(OracleMethod method);

struct OracleResult {
  OracleMethod method = OracleMethod::kGridDp;
  /// Optimal sequence u_1..u_T (u_0 = start) with its per-round costs; total
  /// is recomputed from the sequence.
  RunTrace trace;
  int grid_resolution = 0;
  /// Upper bound on (grid optimum - continuous optimum). Grid DP only.
  double slack = 0.0;
  /// Objective decrease of the last full sweep. Joint-convex only.
  double convergence_gap = 0.0;
  bool converged = true;

  double total() const { return trace.total; }
  const std::vector<Point>& sequence() const { return trace.decisions; }
};

enum class DpTransform {
  kAuto,   // exact linear-time transforms where the geometry allows, pairwise scan otherwise
  kBrute,  // always scan every (source, destination) pair
};

struct GridDpSettings {
  int points_per_axis = 1001;
  /// Cap on transition pairs examined per stage.
  std::int64_t max_pairs_per_stage = 1'000'000;
  DpTransform transform = DpTransform::kAuto;
};

/// Exact minimum of sum_t f_t(u_t) + m(u_t, u_{t-1}) over sequences drawn from
/// a uniform grid (points_per_axis per axis over the bounding box, restricted
/// to the domain), with u_0 = start held fixed.
OracleResult offline_optimal_grid_dp(std::span<const CostFunction> costs, const Domain& domain, const Point& start,
                                     const SwitchingCost& m, const GridDpSettings& settings = {});

/// Largest distance from a feasible point to the nearest grid point.
double grid_covering_radius(const Domain& domain, int points_per_axis);

struct ConvexOracleSettings {
  int max_sweeps = 500;
  /// Stop once a forward+backward sweep lowers the objective by less than this.
  double tolerance = 1e-10;
  SolverSettings block;
};

/// Block-coordinate minimization over (u_1..u_T), sweeping forward then
/// backward. With half-squared-l2 switching each block is a proximal step;
/// with l2 switching blocks are solved by projected subgradient.
OracleResult offline_optimal_convex(std::span<const CostFunction> costs, const Domain& domain, const Point& start,
                                    const SwitchingCost& m, const ConvexOracleSettings& settings = {});

/// sum_t f_t(u_t) + m(u_t, u_{t-1}) with u_0 = start.
double sequence_cost(std::span<const Point> seq, std::span<const CostFunction> costs, const Point& start,
                     const SwitchingCost& m);

}  // namespace smoothol

#endif  // SMOOTHOL_ORACLE_HPP_
