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

#ifndef SMOOTHOL_REPORT_HPP_
#define SMOOTHOL_REPORT_HPP_

#include <ostream>
#include <span>
#include <string>

#include "smoothol/competitive.hpp"
#include "smoothol/harness.hpp"
#include "smoothol/oracle.hpp"

namespace smoothol {

/// Shortest round-trip form ("{:.17g}"); infinities print as inf / -inf.
std::string format_number(double x);
/// Coordinates joined by ';'.
std::string format_point(const Point& p);

inline constexpr const char* kReportHeader =
    "cell_id,seed,family,param,T,d,algorithm,total_cost,oracle_cost,ratio,regret,P_T,bound,bound_satisfied";

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);

/// t,x,hitting,switching,cumulative_total, plus weight_eta_i and expert_i_x
/// columns when `with_extras` is set and the trace carries expert records.
void write_trace_csv(std::ostream& out, const RunTrace& trace, bool with_extras);

/// Trace columns plus method,grid_resolution,convergence_gap.
void write_oracle_csv(std::ostream& out, const OracleResult& result);

}  // namespace smoothol

#endif  // SMOOTHOL_REPORT_HPP_
