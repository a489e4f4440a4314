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

#ifndef SMOOTHOL_RNG_HPP_
#define SMOOTHOL_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

#include "smoothol/geometry.hpp"

namespace smoothol {

/// Folds a list of integers into one 64-bit seed (splitmix64 finalizer chain).
/// Used to derive per-cell seeds from (master seed, instance index, ...).
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the distributions are implemented here
/// rather than taken from <random>, whose algorithms are unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Standard normal via Box-Muller (one draw per call, the sine half is discarded).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Uniform sample from a box, or uniform in volume from a ball.
Point sample_in_domain(const Domain& domain, Rng& rng);
Point sample_gaussian(int dimension, Rng& rng);

}  // namespace smoothol

#endif  // SMOOTHOL_RNG_HPP_
