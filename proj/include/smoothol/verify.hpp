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

#ifndef SMOOTHOL_VERIFY_HPP_
#define SMOOTHOL_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace smoothol {

/// Invariant audit settings. `beta_scale` and `prox_tolerance` exist to
/// inject faults: the runs use the scaled beta and the loosened solver while
/// the checks keep the nominal constants.
struct VerifyConfig {
  std::uint64_t seed = 7;
  std::vector<std::string> suites;  // empty = all
  double beta_scale = 1.0;
  double prox_tolerance = 1e-8;
  int T = 256;
  int dimension = 2;
  int runs = 4;
  int prox_cases = 30;
  int samples = 100;
  int grid_tuples = 2000;
  int hedge_rounds = 2000;
};

const std::vector<std::string>& verify_suite_names();

struct SuiteOutcome {
  std::string name;
  long long checks = 0;
  long long failures = 0;
  /// First few failures, each naming the witness values.
  std::vector<std::string> witnesses;
};

struct VerifyReport {
  std::vector<SuiteOutcome> suites;
  bool passed() const;
};

VerifyReport run_verify(const VerifyConfig& config);

}  // namespace smoothol

#endif  // SMOOTHOL_VERIFY_HPP_
