// Copyright 2026 The kposim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kposim/exp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kposim/errors.hpp"
#include "kposim/exp/experiments.hpp"

namespace kposim::exp {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail("'" + key + "' must be finite");
  return x;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail("'" + key + "' must be an integer");
  return v.get<int>();
}

bool boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail("'" + key + "' must be true or false");
  return v.get<bool>();
}

std::array<double, 2> pair(const json& v, const std::string& key) {
  if (v.is_number()) {
    const double x = number(v, key);
    return {x, x};
  }
  if (!v.is_array() || v.size() != 2) fail("'" + key + "' must be a number or a two-element array");
  return {number(v[0], key), number(v[1], key)};
}

void apply_params(const json& j, KpoSystemParams& p) {
  check_keys(j, "params", {"K", "p", "J", "r", "xi_cd", "delta_prime", "kappa", "gamma_p", "n_max"});
  if (j.contains("K")) p.K = number(j["K"], "K");
  if (j.contains("p")) p.p = pair(j["p"], "p");
  if (j.contains("J")) p.J = number(j["J"], "J");
  if (j.contains("r")) p.r = number(j["r"], "r");
  if (j.contains("xi_cd")) p.xi_cd = number(j["xi_cd"], "xi_cd");
  if (j.contains("delta_prime")) p.delta_prime = number(j["delta_prime"], "delta_prime");
  if (j.contains("kappa")) p.kappa = pair(j["kappa"], "kappa");
  if (j.contains("gamma_p")) p.gamma_p = pair(j["gamma_p"], "gamma_p");
  if (j.contains("n_max")) p.n_max = integer(j["n_max"], "n_max");
}

void apply_grid(const json& j, std::vector<GridAxis>& grid) {
  if (!j.is_object()) fail("grid must be an object");
  for (const auto& [key, value] : j.items()) {
    auto it = std::find_if(grid.begin(), grid.end(), [&](const GridAxis& a) { return a.name == key; });
    if (it == grid.end()) {
      std::string known;
      for (const auto& a : grid) known += (known.empty() ? "" : ", ") + a.name;
      fail("unknown grid axis '" + key + "' (axes: " + known + ")");
    }
    std::vector<double> values;
    if (value.is_number()) {
      values.push_back(number(value, "grid." + key));
    } else if (value.is_array()) {
      for (const auto& v : value) values.push_back(number(v, "grid." + key));
    } else {
      fail("grid axis '" + key + "' must be a number or an array");
    }
    it->values = std::move(values);
  }
}

void apply_options(const json& j, ExperimentOptions& o) {
  check_keys(j, "options",
             {"theta_amp", "target_phase", "basis_states", "p_max", "rotation_duration", "ground_window", "wigner_grid"});
  if (j.contains("theta_amp")) o.theta_amp = number(j["theta_amp"], "theta_amp");
  if (j.contains("target_phase")) {
    if (j["target_phase"].is_null()) {
      o.target_phase.reset();
    } else {
      o.target_phase = number(j["target_phase"], "target_phase");
    }
  }
  if (j.contains("basis_states")) o.basis_states = boolean(j["basis_states"], "basis_states");
  if (j.contains("p_max")) o.p_max = number(j["p_max"], "p_max");
  if (j.contains("rotation_duration")) o.rotation_duration = number(j["rotation_duration"], "rotation_duration");
  if (j.contains("ground_window")) o.ground_window = number(j["ground_window"], "ground_window");
  if (j.contains("wigner_grid")) {
    const auto& w = j["wigner_grid"];
    check_keys(w, "options.wigner_grid", {"x_min", "x_max", "y_min", "y_max", "nx", "ny"});
    auto& g = o.wigner_grid;
    if (w.contains("x_min")) g.x_min = number(w["x_min"], "x_min");
    if (w.contains("x_max")) g.x_max = number(w["x_max"], "x_max");
    if (w.contains("y_min")) g.y_min = number(w["y_min"], "y_min");
    if (w.contains("y_max")) g.y_max = number(w["y_max"], "y_max");
    if (w.contains("nx")) g.nx = integer(w["nx"], "nx");
    if (w.contains("ny")) g.ny = integer(w["ny"], "ny");
  }
}

IntegratorMethod parse_method(const std::string& s) {
  if (s == "rk4_fixed") return IntegratorMethod::rk4_fixed;
  if (s == "rk_adaptive") return IntegratorMethod::rk_adaptive;
  fail("evolution.method must be 'rk4_fixed' or 'rk_adaptive'");
}

DephasingForm parse_dephasing(const std::string& s) {
  if (s == "unit_weight") return DephasingForm::unit_weight;
  if (s == "conventional") return DephasingForm::conventional;
  fail("evolution.dephasing must be 'unit_weight' or 'conventional'");
}

void apply_evolution(const json& j, EvolutionConfig& e) {
  check_keys(j, "evolution", {"method", "step", "tolerance", "renormalize", "monitor_stride", "dephasing"});
  if (j.contains("method")) {
    if (!j["method"].is_string()) fail("evolution.method must be a string");
    e.method = parse_method(j["method"].get<std::string>());
  }
  if (j.contains("step")) e.step = number(j["step"], "step");
  if (j.contains("tolerance")) e.tolerance = number(j["tolerance"], "tolerance");
  if (j.contains("renormalize")) e.renormalize = boolean(j["renormalize"], "renormalize");
  if (j.contains("monitor_stride")) e.monitor_stride = integer(j["monitor_stride"], "monitor_stride");
  if (j.contains("dephasing")) {
    if (!j["dephasing"].is_string()) fail("evolution.dephasing must be a string");
    e.dephasing = parse_dephasing(j["dephasing"].get<std::string>());
  }
}

}  // namespace

const GridAxis& ExperimentConfig::axis(const std::string& name) const {
  for (const auto& a : grid)
    if (a.name == name) return a;
  throw ConfigError("config: experiment '" + experiment + "' has no grid axis '" + name + "'");
}

std::size_t ExperimentConfig::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : grid) n *= a.values.size();
  return n;
}

std::string to_string(IntegratorMethod method) {
  return method == IntegratorMethod::rk4_fixed ? "rk4_fixed" : "rk_adaptive";
}

std::string to_string(DephasingForm form) {
  return form == DephasingForm::unit_weight ? "unit_weight" : "conventional";
}

ExperimentConfig parse_config(const std::string& text, const std::string& experiment) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  check_keys(doc, "document",
             {"schema_version", "experiment", "params", "grid", "options", "evolution", "out", "workers", "audit",
              "strict_truncation"});
  if (!doc.contains("schema_version")) fail("missing 'schema_version'");
  const int version = integer(doc["schema_version"], "schema_version");
  if (version != kSchemaVersion)
    fail("schema_version " + std::to_string(version) + " is not supported (expected " +
         std::to_string(kSchemaVersion) + ")");

  std::string name = experiment;
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_string()) fail("'experiment' must be a string");
    const auto named = doc["experiment"].get<std::string>();
    if (!name.empty() && named != name) fail("file is for experiment '" + named + "', not '" + name + "'");
    name = named;
  }
  if (name.empty()) fail("no experiment named on the command line or in the file");

  ExperimentConfig cfg = find_experiment(name).defaults();
  if (doc.contains("params")) apply_params(doc["params"], cfg.params);
  if (doc.contains("grid")) apply_grid(doc["grid"], cfg.grid);
  if (doc.contains("options")) apply_options(doc["options"], cfg.options);
  if (doc.contains("evolution")) apply_evolution(doc["evolution"], cfg.evolution);
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) fail("'out' must be a string");
    cfg.out_dir = doc["out"].get<std::string>();
  }
  if (doc.contains("workers")) cfg.workers = integer(doc["workers"], "workers");
  if (doc.contains("audit")) cfg.audit = boolean(doc["audit"], "audit");
  if (doc.contains("strict_truncation")) cfg.strict_truncation = boolean(doc["strict_truncation"], "strict_truncation");
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment) {
  std::ifstream in(path);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), experiment);
}

void validate(const ExperimentConfig& c) {
  if (c.schema_version != kSchemaVersion) fail("unsupported schema_version");
  find_experiment(c.experiment);
  try {
    c.params.validate();
    c.options.wigner_grid.validate();
  } catch (const ParameterError& e) {
    fail(e.what());
  }
  EvolutionConfig probe = c.evolution;
  probe.duration = 1.0;
  try {
    probe.validate();
  } catch (const ParameterError& e) {
    fail(e.what());
  }
  for (const auto& a : c.grid) {
    if (a.values.empty()) fail("grid axis '" + a.name + "' is empty");
    for (double v : a.values)
      if (!std::isfinite(v)) fail("grid axis '" + a.name + "' has a non-finite value");
  }
  if (c.workers < 1) fail("workers must be >= 1");
  if (!(c.options.theta_amp >= 0.0)) fail("theta_amp must be >= 0");
  if (!(c.options.p_max > 0.0)) fail("p_max must be > 0");
  if (!(c.options.rotation_duration > 0.0)) fail("rotation_duration must be > 0");
  if (!(c.options.ground_window > 0.0)) fail("ground_window must be > 0");
  if (c.out_dir.empty()) fail("'out' must not be empty");
}

std::string to_json(const ExperimentConfig& c, int indent) {
  json j;
  j["schema_version"] = c.schema_version;
  j["experiment"] = c.experiment;
  const auto& p = c.params;
  j["params"] = {{"K", p.K},         {"p", p.p},         {"J", p.J},
                 {"r", p.r},         {"xi_cd", p.xi_cd}, {"delta_prime", p.delta_prime},
                 {"kappa", p.kappa}, {"gamma_p", p.gamma_p}, {"n_max", p.n_max}};
  json grid = json::object();
  for (const auto& a : c.grid) grid[a.name] = a.values;
  j["grid"] = grid;
  const auto& o = c.options;
  json opts = {{"theta_amp", o.theta_amp},
               {"basis_states", o.basis_states},
               {"p_max", o.p_max},
               {"rotation_duration", o.rotation_duration},
               {"ground_window", o.ground_window},
               {"wigner_grid",
                {{"x_min", o.wigner_grid.x_min},
                 {"x_max", o.wigner_grid.x_max},
                 {"y_min", o.wigner_grid.y_min},
                 {"y_max", o.wigner_grid.y_max},
                 {"nx", o.wigner_grid.nx},
                 {"ny", o.wigner_grid.ny}}}};
  opts["target_phase"] = o.target_phase ? json(*o.target_phase) : json(nullptr);
  j["options"] = opts;
  const auto& e = c.evolution;
  j["evolution"] = {{"method", to_string(e.method)},       {"step", e.step},
                    {"tolerance", e.tolerance},            {"renormalize", e.renormalize},
                    {"monitor_stride", e.monitor_stride},  {"dephasing", to_string(e.dephasing)}};
  j["out"] = c.out_dir;
  j["workers"] = c.workers;
  j["audit"] = c.audit;
  j["strict_truncation"] = c.strict_truncation;
  return j.dump(indent);
}

}  // namespace kposim::exp
