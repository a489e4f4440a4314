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

#include "smoothol/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smoothol {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
  return h;
}

double Rng::normal() {
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  std::uint64_t r = engine_();
  while (r >= limit) r = engine_();
  return r % n;
}

Point sample_gaussian(int dimension, Rng& rng) {
  Point g(dimension);
  for (int i = 0; i < dimension; ++i) g[i] = rng.normal();
  return g;
}

Point sample_in_domain(const Domain& domain, Rng& rng) {
  const int d = domain.dimension();
  if (domain.is_box()) {
    const Box& b = domain.as_box();
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = rng.uniform(b.lower[i], b.upper[i]);
    return p;
  }
  const Ball& b = domain.as_ball();
  Point dir = sample_gaussian(d, rng);
  double n = dir.norm();
  while (n == 0.0) {
    dir = sample_gaussian(d, rng);
    n = dir.norm();
  }
  const double r = b.radius * std::pow(rng.uniform01(), 1.0 / d);
  return domain.project(b.center + dir * (r / n));
}

}  // namespace smoothol
