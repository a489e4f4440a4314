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

#include "smoothol/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace smoothol {

using nlohmann::json;

namespace {

std::string join_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError("'" + (path.empty() ? std::string("<root>") : path) + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!known) throw ConfigError("unknown config key '" + join_path(path, it.key()) + "'");
  }
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("'" + path + "' must be a number");
  return v.get<double>();
}

long long get_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("'" + path + "' must be an integer");
  return v.get<long long>();
}

std::uint64_t get_u64(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  throw ConfigError("'" + path + "' must be a nonnegative integer");
}

int get_int(const json& v, const std::string& path) {
  const long long x = get_integer(v, path);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError("'" + path + "' is out of range");
  }
  return static_cast<int>(x);
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError("'" + path + "' must be true or false");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("'" + path + "' must be a string");
  return v.get<std::string>();
}

Point get_point(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError("'" + path + "' must be a nonempty array of numbers");
  Point p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) p[static_cast<Eigen::Index>(i)] = get_number(v[i], path);
  return p;
}

template <typename F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

Domain parse_domain(const json& j, const std::string& path) {
  const std::string kind = find(j, "kind") ? get_string(j["kind"], join_path(path, "kind")) : std::string();
  if (kind == "box") {
    check_keys(j, path, {"kind", "lower", "upper"});
    if (!find(j, "lower") || !find(j, "upper")) throw ConfigError("'" + path + "' box needs lower and upper");
    return wrap(path, [&] {
      return Domain::box(get_point(j["lower"], join_path(path, "lower")), get_point(j["upper"], join_path(path, "upper")));
    });
  }
  if (kind == "ball") {
    check_keys(j, path, {"kind", "center", "radius"});
    if (!find(j, "center") || !find(j, "radius")) throw ConfigError("'" + path + "' ball needs center and radius");
    return wrap(path, [&] {
      return Domain::ball(get_point(j["center"], join_path(path, "center")),
                          get_number(j["radius"], join_path(path, "radius")));
    });
  }
  throw ConfigError("'" + join_path(path, "kind") + "' must be \"box\" or \"ball\"");
}

CostFunction parse_cost(const json& j, const std::string& path) {
  if (!j.is_object() || !find(j, "family")) throw ConfigError("'" + path + "' must be an object with a family");
  const std::string fam = get_string(j["family"], join_path(path, "family"));
  const double c = find(j, "c") ? get_number(j["c"], join_path(path, "c")) : 0.0;
  if (!find(j, "v")) throw ConfigError("'" + path + "' needs a minimizer v");
  const Point v = get_point(j["v"], join_path(path, "v"));
  return wrap(path, [&] {
    switch (parse_cost_family(fam)) {
      case CostFamily::kPolyhedralNorm:
        check_keys(j, path, {"family", "alpha", "v", "c"});
        if (!find(j, "alpha")) throw ConfigError("'" + path + "' needs alpha");
        return CostFunction::polyhedral(get_number(j["alpha"], join_path(path, "alpha")), v, c);
      case CostFamily::kQuadratic:
        check_keys(j, path, {"family", "lambda", "v", "c"});
        if (!find(j, "lambda")) throw ConfigError("'" + path + "' needs lambda");
        return CostFunction::quadratic(get_number(j["lambda"], join_path(path, "lambda")), v, c);
      case CostFamily::kGeneralQuadratic: {
        check_keys(j, path, {"family", "lambda", "H", "v", "c"});
        if (!find(j, "lambda") || !find(j, "H")) throw ConfigError("'" + path + "' needs lambda and H");
        const json& hj = j["H"];
        const std::string hp = join_path(path, "H");
        if (!hj.is_array() || hj.size() != static_cast<std::size_t>(v.size())) {
          throw ConfigError("'" + hp + "' must be a d x d array");
        }
        Eigen::MatrixXd h(v.size(), v.size());
        for (Eigen::Index r = 0; r < v.size(); ++r) {
          const Point row = get_point(hj[static_cast<std::size_t>(r)], hp);
          if (row.size() != v.size()) throw ConfigError("'" + hp + "' must be a d x d array");
          h.row(r) = row.transpose();
        }
        return CostFunction::general_quadratic(h, get_number(j["lambda"], join_path(path, "lambda")), v, c);
      }
    }
    throw ConfigError("'" + path + "': unknown family");
  });
}

InstanceConfig parse_instance(const json& j, const std::string& path) {
  check_keys(j, path,
             {"family", "param", "dimension", "domain", "T", "process", "sigma", "stage_budget", "offsets",
              "anisotropy", "seeds", "start", "costs"});
  InstanceConfig ic;
  InstanceSpec& s = ic.spec;
  int dim = 0;
  if (const json* v = find(j, "dimension")) {
    dim = get_int(*v, join_path(path, "dimension"));
    if (dim < 1) throw ConfigError("'" + join_path(path, "dimension") + "' must be >= 1");
  }
  if (const json* v = find(j, "domain")) {
    s.domain = parse_domain(*v, join_path(path, "domain"));
    if (dim != 0 && dim != s.domain.dimension()) {
      throw ConfigError("'" + join_path(path, "dimension") + "' disagrees with the domain");
    }
  } else {
    s.domain = Domain::cube(dim == 0 ? 1 : dim, -1.0, 1.0);
  }
  if (const json* v = find(j, "costs")) {
    const std::string cp = join_path(path, "costs");
    if (!v->is_array() || v->empty()) throw ConfigError("'" + cp + "' must be a nonempty array");
    std::vector<CostFunction> costs;
    for (std::size_t t = 0; t < v->size(); ++t) {
      costs.push_back(parse_cost((*v)[t], cp + "." + std::to_string(t)));
      if (costs.back().dimension() != s.domain.dimension()) {
        throw ConfigError("'" + cp + "." + std::to_string(t) + "' has the wrong dimension");
      }
    }
    ic.costs = std::move(costs);
  } else {
    if (!find(j, "family")) throw ConfigError("'" + join_path(path, "family") + "' is required");
    s.family = wrap(join_path(path, "family"), [&] { return parse_cost_family(get_string(j["family"], join_path(path, "family"))); });
    if (!find(j, "param")) throw ConfigError("'" + join_path(path, "param") + "' is required");
    s.parameter = get_number(j["param"], join_path(path, "param"));
    if (!(s.parameter > 0.0)) throw ConfigError("'" + join_path(path, "param") + "' must be > 0");
  }
  if (const json* v = find(j, "T")) {
    const std::string tp = join_path(path, "T");
    if (v->is_array()) {
      for (const json& e : *v) ic.horizons.push_back(get_int(e, tp));
    } else {
      ic.horizons.push_back(get_int(*v, tp));
    }
    for (int T : ic.horizons) {
      if (T < 1) throw ConfigError("'" + tp + "' values must be >= 1");
    }
    if (ic.horizons.empty()) throw ConfigError("'" + tp + "' must not be empty");
  }
  if (!ic.costs && ic.horizons.empty()) throw ConfigError("'" + join_path(path, "T") + "' is required");
  if (const json* v = find(j, "process")) {
    s.process = wrap(join_path(path, "process"), [&] { return parse_minimizer_process(get_string(*v, join_path(path, "process"))); });
  }
  if (const json* v = find(j, "sigma")) s.sigma = get_number(*v, join_path(path, "sigma"));
  if (const json* v = find(j, "stage_budget")) s.stage_budget = get_number(*v, join_path(path, "stage_budget"));
  if (const json* v = find(j, "offsets")) {
    s.offsets = wrap(join_path(path, "offsets"), [&] { return parse_offset_mode(get_string(*v, join_path(path, "offsets"))); });
  }
  if (const json* v = find(j, "anisotropy")) s.anisotropy = get_number(*v, join_path(path, "anisotropy"));
  if (s.sigma < 0.0) throw ConfigError("'" + join_path(path, "sigma") + "' must be >= 0");
  if (s.stage_budget < 0.0) throw ConfigError("'" + join_path(path, "stage_budget") + "' must be >= 0");
  if (s.anisotropy < 1.0) throw ConfigError("'" + join_path(path, "anisotropy") + "' must be >= 1");
  if (const json* v = find(j, "seeds")) {
    const std::string sp = join_path(path, "seeds");
    if (v->is_array()) {
      for (const json& e : *v) ic.seeds.push_back(get_u64(e, sp));
    } else {
      ic.seeds.push_back(get_u64(*v, sp));
    }
  }
  if (const json* v = find(j, "start")) {
    ic.start = get_point(*v, join_path(path, "start"));
    if (ic.start->size() != s.domain.dimension()) throw ConfigError("'" + join_path(path, "start") + "' has the wrong dimension");
  }
  return ic;
}

AlgorithmSpec parse_algorithm(const json& j, const std::string& path) {
  AlgorithmSpec a;
  if (j.is_string()) {
    a.kind = wrap(path, [&] { return parse_algorithm_kind(j.get<std::string>()); });
    return a;
  }
  check_keys(j, path, {"name", "gamma"});
  if (!find(j, "name")) throw ConfigError("'" + join_path(path, "name") + "' is required");
  a.kind = wrap(join_path(path, "name"), [&] { return parse_algorithm_kind(get_string(j["name"], join_path(path, "name"))); });
  if (const json* v = find(j, "gamma")) {
    if (a.kind != AlgorithmKind::kGreedy) throw ConfigError("'" + join_path(path, "gamma") + "' applies to greedy only");
    a.gamma = get_number(*v, join_path(path, "gamma"));
    if (!(*a.gamma > 0.0)) throw ConfigError("'" + join_path(path, "gamma") + "' must be > 0");
  }
  return a;
}

ComparatorSpec parse_comparator(const json& j, const std::string& path) {
  ComparatorSpec c;
  if (j.is_string()) {
    c.kind = wrap(path, [&] { return parse_comparator_kind(j.get<std::string>()); });
    return c;
  }
  check_keys(j, path, {"kind", "budget", "basis"});
  if (!find(j, "kind")) throw ConfigError("'" + join_path(path, "kind") + "' is required");
  c.kind = wrap(join_path(path, "kind"), [&] { return parse_comparator_kind(get_string(j["kind"], join_path(path, "kind"))); });
  if (const json* v = find(j, "budget")) c.budget = get_number(*v, join_path(path, "budget"));
  if (!(c.budget >= 0.0)) throw ConfigError("'" + join_path(path, "budget") + "' must be >= 0");
  if (const json* v = find(j, "basis")) {
    c.basis = wrap(join_path(path, "basis"), [&] { return parse_budget_basis(get_string(*v, join_path(path, "basis"))); });
  }
  return c;
}

void parse_solver(const json& j, const std::string& path, SolverSettings& s) {
  check_keys(j, path, {"max_iterations", "tolerance", "base_step"});
  if (const json* v = find(j, "max_iterations")) s.max_iterations = get_int(*v, join_path(path, "max_iterations"));
  if (const json* v = find(j, "tolerance")) s.tolerance = get_number(*v, join_path(path, "tolerance"));
  if (const json* v = find(j, "base_step")) s.base_step = get_number(*v, join_path(path, "base_step"));
  wrap(path, [&] { s.validate(); });
}

}  // namespace

json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": malformed JSON: " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void apply_override(json& doc, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '" + std::string(assignment) + "' must have the form key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }
  json* node = &doc;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = key.find('.', pos);
    const std::string seg = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (seg.empty()) throw ConfigError("override key '" + key + "' has an empty segment");
    const bool last = dot == std::string::npos;
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(seg, &used);
        if (used != seg.size()) throw std::invalid_argument(seg);
      } catch (const std::exception&) {
        throw ConfigError("override key '" + key + "': '" + seg + "' is not an array index");
      }
      if (idx >= node->size()) throw ConfigError("override key '" + key + "': index " + seg + " is out of range");
      node = &(*node)[idx];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) throw ConfigError("override key '" + key + "': '" + seg + "' is not inside an object");
      node = &(*node)[seg];
    }
    if (last) break;
    pos = dot + 1;
  }
  *node = std::move(value);
}

ExperimentConfig parse_experiment_config(const json& doc) {
  check_keys(doc, "",
             {"seed", "instances", "algorithms", "comparators", "oracle", "solver", "fixed_point", "switching",
              "output"});
  ExperimentConfig c;
  if (const json* v = find(doc, "seed")) c.seed = get_u64(*v, "seed");
  if (const json* v = find(doc, "instances")) {
    if (!v->is_array()) throw ConfigError("'instances' must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) c.instances.push_back(parse_instance((*v)[i], "instances." + std::to_string(i)));
  }
  if (const json* v = find(doc, "algorithms")) {
    if (!v->is_array()) throw ConfigError("'algorithms' must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) c.algorithms.push_back(parse_algorithm((*v)[i], "algorithms." + std::to_string(i)));
  }
  if (const json* v = find(doc, "comparators")) {
    if (!v->is_array()) throw ConfigError("'comparators' must be an array");
    for (std::size_t i = 0; i < v->size(); ++i) c.comparators.push_back(parse_comparator((*v)[i], "comparators." + std::to_string(i)));
  }
  if (const json* v = find(doc, "oracle")) {
    check_keys(*v, "oracle", {"method", "points_per_axis", "max_pairs_per_stage", "transform", "max_sweeps", "tolerance"});
    if (const json* m = find(*v, "method")) {
      const std::string s = get_string(*m, "oracle.method");
      if (s == "auto") c.oracle.method = OracleChoice::kAuto;
      else if (s == "grid-dp") c.oracle.method = OracleChoice::kGridDp;
      else if (s == "joint-convex") c.oracle.method = OracleChoice::kJointConvex;
      else if (s == "none") c.oracle.method = OracleChoice::kNone;
      else throw ConfigError("'oracle.method' must be auto, grid-dp, joint-convex or none");
    }
    if (const json* m = find(*v, "points_per_axis")) c.oracle.grid.points_per_axis = get_int(*m, "oracle.points_per_axis");
    if (c.oracle.grid.points_per_axis < 2) throw ConfigError("'oracle.points_per_axis' must be >= 2");
    if (const json* m = find(*v, "max_pairs_per_stage")) {
      c.oracle.grid.max_pairs_per_stage = get_integer(*m, "oracle.max_pairs_per_stage");
      if (c.oracle.grid.max_pairs_per_stage < 1) throw ConfigError("'oracle.max_pairs_per_stage' must be >= 1");
    }
    if (const json* m = find(*v, "transform")) {
      const std::string s = get_string(*m, "oracle.transform");
      if (s == "auto") c.oracle.grid.transform = DpTransform::kAuto;
      else if (s == "brute") c.oracle.grid.transform = DpTransform::kBrute;
      else throw ConfigError("'oracle.transform' must be auto or brute");
    }
    if (const json* m = find(*v, "max_sweeps")) c.oracle.convex.max_sweeps = get_int(*m, "oracle.max_sweeps");
    if (c.oracle.convex.max_sweeps < 1) throw ConfigError("'oracle.max_sweeps' must be >= 1");
    if (const json* m = find(*v, "tolerance")) c.oracle.convex.tolerance = get_number(*m, "oracle.tolerance");
    if (!(c.oracle.convex.tolerance > 0.0)) throw ConfigError("'oracle.tolerance' must be > 0");
  }
  if (const json* v = find(doc, "solver")) {
    parse_solver(*v, "solver", c.solver);
    c.oracle.convex.block = c.solver;
  }
  if (const json* v = find(doc, "fixed_point")) {
    check_keys(*v, "fixed_point", {"max_iterations", "tolerance", "single_pass"});
    if (const json* m = find(*v, "max_iterations")) c.fixed_point.max_iterations = get_int(*m, "fixed_point.max_iterations");
    if (const json* m = find(*v, "tolerance")) c.fixed_point.tolerance = get_number(*m, "fixed_point.tolerance");
    if (const json* m = find(*v, "single_pass")) c.fixed_point.single_pass = get_bool(*m, "fixed_point.single_pass");
    wrap("fixed_point", [&] { c.fixed_point.validate(); });
  }
  if (const json* v = find(doc, "switching")) {
    const std::string s = get_string(*v, "switching");
    if (s != "auto") c.switching = wrap("switching", [&] { return parse_switching_kind(s); });
  }
  if (const json* v = find(doc, "output")) {
    check_keys(*v, "output", {"report", "trace_dir", "trace_extras"});
    if (const json* m = find(*v, "report")) c.output.report = get_string(*m, "output.report");
    if (const json* m = find(*v, "trace_dir")) c.output.trace_dir = get_string(*m, "output.trace_dir");
    if (const json* m = find(*v, "trace_extras")) c.output.trace_extras = get_bool(*m, "output.trace_extras");
  }
  return c;
}

VerifyConfig parse_verify_config(const json& doc) {
  check_keys(doc, "",
             {"seed", "suites", "beta_scale", "prox_tolerance", "T", "dimension", "runs", "prox_cases", "samples",
              "grid_tuples", "hedge_rounds"});
  VerifyConfig c;
  if (const json* v = find(doc, "seed")) c.seed = get_u64(*v, "seed");
  if (const json* v = find(doc, "suites")) {
    if (!v->is_array()) throw ConfigError("'suites' must be an array");
    const auto& known = verify_suite_names();
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string s = get_string((*v)[i], "suites." + std::to_string(i));
      if (std::find(known.begin(), known.end(), s) == known.end()) {
        throw ConfigError("'suites." + std::to_string(i) + "': unknown suite '" + s + "'");
      }
      c.suites.push_back(s);
    }
  }
  if (const json* v = find(doc, "beta_scale")) c.beta_scale = get_number(*v, "beta_scale");
  if (!(c.beta_scale > 0.0)) throw ConfigError("'beta_scale' must be > 0");
  if (const json* v = find(doc, "prox_tolerance")) c.prox_tolerance = get_number(*v, "prox_tolerance");
  if (!(c.prox_tolerance > 0.0)) throw ConfigError("'prox_tolerance' must be > 0");
  auto positive = [&](const char* key, int& field) {
    if (const json* v = find(doc, key)) field = get_int(*v, key);
    if (field < 1) throw ConfigError(std::string("'") + key + "' must be >= 1");
  };
  positive("T", c.T);
  positive("dimension", c.dimension);
  positive("runs", c.runs);
  positive("prox_cases", c.prox_cases);
  positive("samples", c.samples);
  positive("grid_tuples", c.grid_tuples);
  positive("hedge_rounds", c.hedge_rounds);
  return c;
}

json default_ratio_config() {
  return json::parse(R"({
    "seed": 1,
    "instances": [
      {"family": "polyhedral-norm", "param": 4, "dimension": 1, "T": 200, "process": "iid-uniform", "seeds": [1, 2, 3]},
      {"family": "quadratic", "param": 1, "dimension": 1, "T": 200, "process": "iid-uniform", "seeds": [1, 2, 3]}
    ],
    "algorithms": ["naive", "greedy"],
    "oracle": {"method": "grid-dp", "points_per_axis": 2001}
  })");
}

json default_regret_config() {
  return json::parse(R"({
    "seed": 1,
    "instances": [
      {"family": "quadratic", "param": 1, "dimension": 1, "T": [256, 1024], "process": "random-walk", "sigma": 0.1, "seeds": [1]}
    ],
    "algorithms": ["sader", "lookahead-sader"],
    "comparators": [
      {"kind": "fixed-point"},
      {"kind": "lazy-tracking", "budget": 0.25, "basis": "sqrtT-D"},
      {"kind": "lazy-tracking", "budget": 0.1, "basis": "T-D"}
    ]
  })");
}

json default_oracle_config() {
  return json::parse(R"({
    "seed": 1,
    "instances": [
      {"family": "quadratic", "param": 1, "dimension": 1, "T": 50, "process": "iid-uniform", "seeds": [1]}
    ],
    "oracle": {"method": "grid-dp", "points_per_axis": 1001}
  })");
}

json default_verify_config() { return json::object(); }

}  // namespace smoothol
