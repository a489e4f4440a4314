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

#include "smoothol/report.hpp"

#include <fmt/format.h>

#include <cmath>

namespace smoothol {

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return fmt::format("{:.17g}", x);
}

std::string format_point(const Point& p) {
  std::string s;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) s += ';';
    s += format_number(p[i]);
  }
  return s;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

void write_trace_rows(std::ostream& out, const RunTrace& trace, bool extras, const std::string& suffix) {
  const bool with = extras && trace.extras.has_value();
  double cumulative = 0.0;
  for (std::size_t t = 0; t < trace.decisions.size(); ++t) {
    cumulative += trace.hitting[t] + trace.switching[t];
    std::string line = fmt::format("{},{},{},{},{}", t + 1, format_point(trace.decisions[t]),
                                   format_number(trace.hitting[t]), format_number(trace.switching[t]),
                                   format_number(cumulative));
    if (with) {
      for (double w : trace.extras->weights[t]) line += "," + format_number(w);
      for (const Point& x : trace.extras->expert_points[t]) line += "," + format_point(x);
    }
    out << line << suffix << '\n';
  }
}

std::string trace_header(const RunTrace& trace, bool extras) {
  std::string h = "t,x,hitting,switching,cumulative_total";
  if (extras && trace.extras) {
    const std::size_t n = trace.extras->etas.size();
    for (std::size_t i = 1; i <= n; ++i) h += fmt::format(",weight_eta_{}", i);
    for (std::size_t i = 1; i <= n; ++i) h += fmt::format(",expert_{}_x", i);
  }
  return h;
}

}  // namespace

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << kReportHeader << '\n';
  for (const ReportRow& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.cell_id, r.seed, r.family,
                       format_number(r.param), r.T, r.d, r.algorithm, opt(r.total_cost), opt(r.oracle_cost),
                       opt(r.ratio), opt(r.regret), opt(r.path_length), opt(r.bound), r.bound_satisfied);
  }
}

void write_trace_csv(std::ostream& out, const RunTrace& trace, bool with_extras) {
  out << trace_header(trace, with_extras) << '\n';
  write_trace_rows(out, trace, with_extras, "");
}

void write_oracle_csv(std::ostream& out, const OracleResult& result) {
  out << trace_header(result.trace, false) << ",method,grid_resolution,convergence_gap\n";
  const std::string suffix =
      fmt::format(",{},{},{}", to_string(result.method),
                  result.method == OracleMethod::kGridDp ? std::to_string(result.grid_resolution) : std::string(),
                  result.method == OracleMethod::kJointConvex ? format_number(result.convergence_gap) : std::string());
  write_trace_rows(out, result.trace, false, suffix);
}

}  // namespace smoothol
