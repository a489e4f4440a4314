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

#include "smoothol/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "smoothol/config.hpp"
#include "smoothol/harness.hpp"
#include "smoothol/report.hpp"
#include "smoothol/rng.hpp"
#include "smoothol/verify.hpp"

namespace smoothol {

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  int jobs = 1;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "Experiment JSON config (built-in default when omitted)");
  sub->add_option("--out", o.out_path, "Output CSV path (stdout when omitted)");
  sub->add_option("--seed", o.seed, "Master seed override");
  sub->add_option("--set", o.overrides, "Config override key=value (dotted path; repeatable)");
  sub->add_option("--jobs", o.jobs, "Worker threads for independent cells")->check(CLI::PositiveNumber);
}

nlohmann::json load_document(const CommonOptions& o, nlohmann::json fallback) {
  nlohmann::json doc = o.config_path.empty() ? std::move(fallback) : load_json_file(o.config_path);
  if (o.seed) doc["seed"] = *o.seed;
  for (const std::string& s : o.overrides) apply_override(doc, s);
  return doc;
}

// Writes to --out, then the config's output.report, then `out`.
void emit(const CommonOptions& o, const std::optional<std::string>& configured, const std::string& text,
          std::ostream& out) {
  const std::string path = !o.out_path.empty() ? o.out_path : configured.value_or("");
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  f << text;
  if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

enum class Family { kRatio, kRegret, kAny };

int run_experiment_command(const CommonOptions& o, nlohmann::json fallback, Family family, std::ostream& out,
                           std::ostream& err) {
  const ExperimentConfig config = parse_experiment_config(load_document(o, std::move(fallback)));
  for (std::size_t i = 0; i < config.algorithms.size(); ++i) {
    const bool ratio = is_ratio_algorithm(config.algorithms[i].kind);
    if ((family == Family::kRatio && !ratio) || (family == Family::kRegret && ratio)) {
      throw ConfigError(fmt::format("'algorithms.{}': {} is not available in this subcommand", i,
                                    to_string(config.algorithms[i].kind)));
    }
  }
  const ExperimentResult result = run_experiment(config, o.jobs);
  std::ostringstream csv;
  write_report_csv(csv, result.rows);
  emit(o, config.output.report, csv.str(), out);

  const bool to_stdout = o.out_path.empty() && !config.output.report;
  std::ostream& info = to_stdout ? err : out;
  for (const FitSummary& f : result.fits) {
    info << fmt::format("fit_scaling algorithm={} comparator={} value={}\n", f.algorithm, f.comparator,
                        format_number(f.value));
  }
  int violations = 0;
  for (const ReportRow& r : result.rows) {
    if (r.bound_satisfied == "false") {
      ++violations;
      err << fmt::format("violation: {} value={} bound={}\n", r.cell_id,
                         r.ratio ? format_number(*r.ratio) : r.regret ? format_number(*r.regret) : "",
                         r.bound ? format_number(*r.bound) : "");
    } else if (r.bound_satisfied == "error") {
      ++violations;
      err << fmt::format("error: {}: {}\n", r.cell_id, r.error);
    }
  }
  return violations == 0 ? kExitOk : kExitViolation;
}

int run_oracle_command(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = parse_experiment_config(load_document(o, default_oracle_config()));
  if (!config.algorithms.empty() || !config.comparators.empty()) {
    throw ConfigError("'algorithms' and 'comparators' are not used by the oracle subcommand");
  }
  std::ostringstream csv;
  bool header = false;
  int failures = 0;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    const InstanceConfig& ic = config.instances[i];
    std::vector<std::uint64_t> seeds = ic.seeds.empty() ? std::vector<std::uint64_t>{0} : ic.seeds;
    std::vector<int> horizons = ic.costs ? std::vector<int>{static_cast<int>(ic.costs->size())} : ic.horizons;
    for (std::uint64_t s : seeds) {
      for (int T : horizons) {
        const std::string cell = fmt::format("i{}-s{}-T{}", i, s, T);
        try {
          std::vector<CostFunction> costs;
          if (ic.costs) {
            costs = *ic.costs;
          } else {
            InstanceSpec spec = ic.spec;
            spec.T = T;
            spec.seed = mix_seed({config.seed, static_cast<std::uint64_t>(i), s, static_cast<std::uint64_t>(T)});
            costs = generate_instance(spec);
          }
          const Domain& domain = ic.spec.domain;
          const Point start = ic.start.value_or(Point::Zero(domain.dimension()));
          const CostFamily fam = costs.front().family();
          const SwitchingCost m{config.switching.value_or(
              fam == CostFamily::kPolyhedralNorm ? SwitchingKind::kL2 : SwitchingKind::kHalfSquaredL2)};
          OracleChoice method = config.oracle.method;
          if (method == OracleChoice::kNone) throw ConfigError("'oracle.method' must not be none here");
          if (method == OracleChoice::kAuto) {
            method = domain.dimension() == 1 ? OracleChoice::kGridDp : OracleChoice::kJointConvex;
          }
          const OracleResult res = method == OracleChoice::kGridDp
                                       ? offline_optimal_grid_dp(costs, domain, start, m, config.oracle.grid)
                                       : offline_optimal_convex(costs, domain, start, m, config.oracle.convex);
          std::ostringstream one;
          write_oracle_csv(one, res);
          std::istringstream lines(one.str());
          std::string line;
          std::getline(lines, line);
          if (!header) {
            csv << "cell_id," << line << '\n';
            header = true;
          }
          while (std::getline(lines, line)) csv << cell << ',' << line << '\n';
          if (!res.converged) {
            ++failures;
            err << fmt::format("warning: {}: oracle did not converge (gap {})\n", cell,
                               format_number(res.convergence_gap));
          }
        } catch (const ConfigError&) {
          throw;
        } catch (const std::exception& e) {
          ++failures;
          err << fmt::format("error: {}: {}\n", cell, e.what());
        }
      }
    }
  }
  emit(o, config.output.report, csv.str(), out);
  return failures == 0 ? kExitOk : kExitViolation;
}

int run_verify_command(const CommonOptions& o, std::ostream& out) {
  const VerifyConfig config = parse_verify_config(load_document(o, default_verify_config()));
  const VerifyReport report = run_verify(config);
  std::ostringstream text;
  for (const SuiteOutcome& s : report.suites) {
    text << fmt::format("{} {} checks={} failures={}\n", s.failures == 0 ? "PASS" : "FAIL", s.name, s.checks,
                        s.failures);
    for (const std::string& w : s.witnesses) text << "  witness: " << w << '\n';
  }
  emit(o, std::nullopt, text.str(), out);
  return report.passed() ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothed online learning experiments: competitive ratios, dynamic regret, oracles, audits."};
  app.require_subcommand(1);
  CommonOptions opts;
  CLI::App* ratio = app.add_subcommand("ratio", "Naive/greedy runs against the offline optimum");
  CLI::App* regret = app.add_subcommand("regret", "Expert-aggregation runs against comparator sequences");
  CLI::App* oracle = app.add_subcommand("oracle", "Offline optimal sequences");
  CLI::App* verify = app.add_subcommand("verify", "Invariant audits");
  CLI::App* sweep = app.add_subcommand("sweep", "Any mix of algorithms");
  for (CLI::App* sub : {ratio, regret, oracle, verify, sweep}) add_common(sub, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (ratio->parsed()) return run_experiment_command(opts, default_ratio_config(), Family::kRatio, out, err);
    if (regret->parsed()) return run_experiment_command(opts, default_regret_config(), Family::kRegret, out, err);
    if (sweep->parsed()) return run_experiment_command(opts, default_ratio_config(), Family::kAny, out, err);
    if (oracle->parsed()) return run_oracle_command(opts, out, err);
    if (verify->parsed()) return run_verify_command(opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace smoothol
