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

#include "kposim/exp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kposim/errors.hpp"
#include "kposim/exp/gate_runs.hpp"

namespace kposim::exp {
namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<std::string> kGateMetrics = {
    "theta_amp",       "fidelity",        "infidelity",       "log10_infidelity",         "basis_fidelity_mean",
    "basis_fidelity_spread", "phase_rel_01", "phase_rel_10",   "phase_rel_11",             "predicted_rel_01",
    "predicted_rel_01_literal", "min_population", "steps",     "max_norm_drift",           "min_eigenvalue",
    "n_max",           "step"};

const std::vector<std::string> kStateMetrics = {"fidelity", "infidelity", "log10_infidelity", "steps",
                                                "max_norm_drift", "n_max", "step"};

ExperimentConfig base(const std::string& name, std::vector<GridAxis> grid) {
  ExperimentConfig c;
  c.experiment = name;
  c.grid = std::move(grid);
  return c;
}

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) v.push_back(lo + step * i);
  return v;
}

void put_fidelity(PointResult& r, double f) {
  const double inf = std::max(0.0, 1.0 - f);
  r.metrics["fidelity"] = f;
  r.metrics["infidelity"] = inf;
  r.metrics["log10_infidelity"] = std::log10(std::max(inf, 1e-16));
}

void put_stats(PointResult& r, const StepStats& s, const ExperimentConfig& c, int n_max, bool open_system) {
  r.metrics["steps"] = static_cast<double>(s.steps);
  r.metrics["max_norm_drift"] = s.max_norm_drift;
  if (open_system) r.metrics["min_eigenvalue"] = s.min_eigenvalue;
  r.metrics["n_max"] = n_max;
  r.metrics["step"] = c.evolution.method == IntegratorMethod::rk4_fixed ? s.step_used : c.evolution.tolerance;
}

bool has_axis(const GridPoint& g, const std::string& name) {
  return std::find(g.names.begin(), g.names.end(), name) != g.names.end();
}

// Parameters at a grid point: axes named after parameters override the config.
KpoSystemParams point_params(const ExperimentConfig& c, const GridPoint& g) {
  KpoSystemParams p = c.params;
  if (has_axis(g, "p")) p.p = {g.get("p"), g.get("p")};
  if (has_axis(g, "J")) p.J = g.get("J");
  if (has_axis(g, "xi")) p.xi_cd = g.get("xi");
  if (has_axis(g, "delta_prime")) p.delta_prime = g.get("delta_prime");
  if (has_axis(g, "kappa")) {
    p.kappa = {g.get("kappa"), g.get("kappa")};
    p.gamma_p = p.kappa;
  }
  if (has_axis(g, "cd") && g.get("cd") == 0.0) p.xi_cd = 0.0;
  return p;
}

PointResult gate_point(const ExperimentConfig& c, const GridPoint& g, GateRequest req) {
  req.duration = g.get("T");
  if (has_axis(g, "theta_amp")) {
    req.theta_amp = g.get("theta_amp");
  } else if (c.options.target_phase) {
    req.theta_amp = calibrated_theta_amp(req.params, req.duration, *c.options.target_phase);
  } else {
    req.theta_amp = c.options.theta_amp;
  }
  req.basis_states = c.options.basis_states;
  req.evolution = c.evolution;
  req.truncation = c.truncation();

  const GateResult res = run_gate(req);
  PointResult r;
  r.metrics["theta_amp"] = req.theta_amp;
  put_fidelity(r, res.fidelity);
  put_stats(r, res.stats, c, req.params.n_max, req.open_system);
  const Schedule gate = Schedule::gate_phase(req.duration, req.theta_amp);
  const double phi = analytic_gate_phase(req.params, gate);
  r.metrics["predicted_rel_01"] = wrap_phase(res.target_phases(0, 1) - res.target_phases(0, 0));
  r.metrics["predicted_rel_01_literal"] = wrap_phase(-2.0 * phi);
  if (req.basis_states) {
    r.metrics["basis_fidelity_mean"] = res.basis_fidelity_mean;
    r.metrics["basis_fidelity_spread"] = res.basis_fidelity_spread;
  }
  if (res.phases) {
    r.metrics["phase_rel_01"] = res.phases->relative(0, 1);
    r.metrics["phase_rel_10"] = res.phases->relative(1, 0);
    r.metrics["phase_rel_11"] = res.phases->relative(1, 1);
    r.metrics["min_population"] = res.phases->population.minCoeff();
  }
  return r;
}

GateRequest closed_request(const ExperimentConfig& c, const GridPoint& g) {
  GateRequest req;
  req.params = point_params(c, g);
  return req;
}

// --- experiment bodies ------------------------------------------------------

PointResult rotation_point(const ExperimentConfig& c, const GridPoint& g) {
  const KpoSystemParams p = point_params(c, g);
  const bool cd = g.get("cd") != 0.0;
  const RotationResult res = run_rotation(p, g.get("T"), cd, c.evolution, c.truncation());
  PointResult r;
  put_fidelity(r, res.fidelity);
  put_stats(r, res.stats, c, p.n_max, false);
  return r;
}

PointResult gate_closed_point(const ExperimentConfig& c, const GridPoint& g) {
  return gate_point(c, g, closed_request(c, g));
}

PointResult decoherence_point(const ExperimentConfig& c, const GridPoint& g) {
  GateRequest req = closed_request(c, g);
  req.open_system = true;
  return gate_point(c, g, req);
}

PointResult beam_splitter_point(const ExperimentConfig& c, const GridPoint& g) {
  GateRequest req = closed_request(c, g);
  req.scheme = g.get("scheme") != 0.0 ? CouplingScheme::beam_splitter : CouplingScheme::tunable_cd;
  return gate_point(c, g, req);
}

PointResult channel_point(const ExperimentConfig& c, const GridPoint& g) {
  GateRequest req = closed_request(c, g);
  const double rate = g.get("rate");
  const double channel = g.get("channel");
  if (channel != 0.0 && channel != 1.0) throw ParameterError("channel must be 0 (decay) or 1 (dephasing)");
  req.params.kappa = channel == 0.0 ? std::array<double, 2>{rate, rate} : std::array<double, 2>{0.0, 0.0};
  req.params.gamma_p = channel == 1.0 ? std::array<double, 2>{rate, rate} : std::array<double, 2>{0.0, 0.0};
  req.open_system = true;
  return gate_point(c, g, req);
}

PointResult loading_point(const ExperimentConfig& c, const GridPoint& g) {
  const KpoSystemParams p = point_params(c, g);
  const LoadingResult res =
      run_loading(p, g.get("T"), c.options.p_max, g.get("delta_max"), c.options.ground_window, c.evolution);
  PointResult r;
  put_fidelity(r, res.fidelity);
  r.metrics["ground_overlap"] = res.ground_overlap;
  r.metrics["manifold_size"] = static_cast<double>(res.manifold_size);
  put_stats(r, res.stats, c, p.n_max, false);
  return r;
}

PointResult wigner_point_run(const ExperimentConfig& c, const GridPoint& g) {
  const KpoSystemParams p = point_params(c, g);
  const int which = static_cast<int>(g.get("snapshot"));
  const FockSpace space(p.n_max, 1);
  const StateVector cat = cat_state(space, Complex(p.alpha(0), 0.0), Parity::even, c.truncation());
  PointResult r;
  std::string label;
  StateVector state = cat;
  double f = 1.0;
  switch (which) {
    case 0:
      label = "cat_theta0";
      break;
    case 1:
      label = "cat_theta45";
      state = rotate(cat, kPi / 4);
      break;
    case 2:
    case 3: {
      label = which == 2 ? "rotation_cd" : "rotation_nocd";
      auto res = run_rotation(p, c.options.rotation_duration, which == 2, c.evolution, c.truncation());
      f = res.fidelity;
      state = std::move(res.final_state);
      put_stats(r, res.stats, c, p.n_max, false);
      break;
    }
    default:
      throw ParameterError("snapshot must be 0 (cat, theta 0), 1 (cat, theta pi/4), 2 (rotation with CD) or 3 "
                           "(rotation without CD)");
  }
  put_fidelity(r, f);
  WignerGrid grid = wigner(state, c.options.wigner_grid);
  r.metrics["w_origin"] = wigner_point(DensityMatrix::from_pure(state), 0.0);
  r.metrics["w_integral"] = grid.integral();
  r.metrics["w_max"] = grid.values.maxCoeff();
  r.metrics["w_min"] = grid.values.minCoeff();
  r.metrics["imag_residue"] = grid.imag_residue;
  r.metrics["n_max"] = p.n_max;
  r.snapshots.push_back({label, std::move(grid)});
  return r;
}

std::vector<ExperimentDef> build_registry() {
  std::vector<ExperimentDef> r;
  const double half_pi_target = -kPi / 2;

  r.push_back({"rotation-sweep-T", "rotation fidelity vs T",
               "Single KPO rotated from theta = 0 to pi/2, even cat at p/K = 7, with and without the CD term.",
               kStateMetrics,
               [] {
                 auto c = base("rotation-sweep-T", {{"T", {0.2, 0.3, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0}}, {"cd", {1, 0}}});
                 return c;
               },
               rotation_point});

  r.push_back({"gate-sweep-T", "gate infidelity vs T",
               "Rzz gate from Psi_s at p/K = 7, J/K = 0.2, theta_amp = 0.1, with and without the CD term.",
               kGateMetrics,
               [] {
                 return base("gate-sweep-T",
                             {{"T", {0.2, 0.3, 0.4, 0.5, 0.7, 1.0, 1.5, 2.0, 2.5, 3.0}}, {"cd", {1, 0}}});
               },
               gate_closed_point});

  r.push_back({"gate-sweep-theta-amp", "gate infidelity and phases vs theta_amp",
               "Rzz gate at T = 1/K, p/K = 7, J/K = 0.2; phases extracted from the four basis states.", kGateMetrics,
               [] {
                 auto c = base("gate-sweep-theta-amp",
                               {{"T", {1.0}}, {"theta_amp", {0.0, 0.02, 0.05, 0.1, 0.15, 0.2}}, {"cd", {1, 0}}});
                 c.options.basis_states = true;
                 return c;
               },
               gate_closed_point});

  r.push_back({"gate-sweep-T-by-p", "calibrated gate infidelity vs T for several p",
               "Rzz gate with theta_amp calibrated to phi_10 - phi_00 = -pi/2, p/K in {5, 6, 7}, J/K = 0.2.",
               kGateMetrics,
               [half_pi_target] {
                 auto c = base("gate-sweep-T-by-p",
                               {{"p", {5, 6, 7}}, {"T", {0.4, 0.5, 0.7, 1.0, 1.5, 2.0}}, {"cd", {1, 0}}});
                 c.options.target_phase = half_pi_target;
                 return c;
               },
               gate_closed_point});

  r.push_back({"gate-decoherence", "gate infidelity vs T with decay and dephasing",
               "Master-equation Rzz gate with kappa_l = gamma_p^(l) = kappa, calibrated theta_amp, p/K in {5, 7}.",
               kGateMetrics,
               [half_pi_target] {
                 auto c = base("gate-decoherence", {{"p", {5, 7}},
                                                    {"kappa", {1e-3, 1e-4}},
                                                    {"T", {0.5, 0.7, 1.0, 1.5, 2.0, 3.0}},
                                                    {"cd", {1, 0}}});
                 c.options.target_phase = half_pi_target;
                 c.params.n_max = 20;
                 c.evolution.step = 1e-3;
                 return c;
               },
               decoherence_point});

  r.push_back({"beam-splitter-compare", "CD scheme vs beam-splitter coupling",
               "CD scheme (scheme 0) against the beam-splitter coupling J cos(theta(t)) with both phases at 0 "
               "(scheme 1), calibrated theta_amp, p/K in {4, 6}.",
               kGateMetrics,
               [half_pi_target] {
                 auto c = base("beam-splitter-compare",
                               {{"p", {4, 6}}, {"T", {1.0, 1.5, 2.0, 3.0}}, {"scheme", {0, 1}}});
                 c.options.target_phase = half_pi_target;
                 return c;
               },
               beam_splitter_point});

  r.push_back({"pure-decay-vs-dephasing", "pure decay vs pure dephasing",
               "CD gate with pure decay (channel 0, kappa_l = rate) or pure dephasing (channel 1, gamma_p = rate), "
               "p/K = 7, calibrated theta_amp.",
               kGateMetrics,
               [half_pi_target] {
                 auto c = base("pure-decay-vs-dephasing",
                               {{"channel", {0, 1}}, {"rate", {1e-3}}, {"T", {0.5, 0.7, 1.0, 1.5, 2.0, 3.0}}});
                 c.options.target_phase = half_pi_target;
                 c.params.n_max = 20;
                 c.evolution.step = 1e-3;
                 return c;
               },
               channel_point});

  r.push_back({"cd-error-sweep", "infidelity vs CD scaling error",
               "Infidelity vs the CD scaling xi at T = 1/K, p/K = 7, calibrated theta_amp.", kGateMetrics,
               [half_pi_target] {
                 auto c = base("cd-error-sweep", {{"T", {1.0}}, {"xi", range(0.0, 1.2, 0.1)}});
                 c.options.target_phase = half_pi_target;
                 return c;
               },
               gate_closed_point});

  r.push_back({"detuning-error-sweep", "infidelity vs detuning error on KPO 2",
               "Infidelity vs the constant detuning Delta' at T = 1/K, p/K = 7, calibrated theta_amp.", kGateMetrics,
               [half_pi_target] {
                 auto c = base("detuning-error-sweep", {{"T", {1.0}}, {"delta_prime", range(-0.1, 0.1, 0.025)}});
                 c.options.target_phase = half_pi_target;
                 return c;
               },
               gate_closed_point});

  std::vector<std::string> loading_metrics = kStateMetrics;
  loading_metrics.insert(loading_metrics.begin() + 3, {"ground_overlap", "manifold_size"});
  r.push_back({"loading", "ground-state loading vs ramp time",
               "Vacuum loaded by the pump ramp to p_max/K = 4 with and without the detuning ramp, J/K in {0, 0.2}.",
               loading_metrics,
               [] {
                 auto c = base("loading",
                               {{"J", {0.0, 0.2}}, {"delta_max", {0.0, 3.0}}, {"T", {0.5, 1.0, 1.5, 2.0, 3.0}}});
                 c.options.p_max = 4.0;
                 c.params.p = {4.0, 4.0};
                 c.params.n_max = 20;
                 return c;
               },
               loading_point});

  r.push_back({"wigner-snapshot", "Wigner functions of cats and rotated states",
               "Even cat at theta = 0 and pi/4, and the state after the T = 0.6/K rotation with and without CD.",
               {"fidelity", "infidelity", "log10_infidelity", "w_origin", "w_integral", "w_max", "w_min",
                "imag_residue", "steps", "max_norm_drift", "n_max", "step"},
               [] { return base("wigner-snapshot", {{"snapshot", {0, 1, 2, 3}}}); },
               wigner_point_run});
  return r;
}

}  // namespace

double GridPoint::get(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw ParameterError("grid point has no axis '" + name + "'");
}

const std::vector<ExperimentDef>& registry() {
  static const std::vector<ExperimentDef> r = build_registry();
  return r;
}

const ExperimentDef& find_experiment(const std::string& name) {
  for (const auto& def : registry())
    if (def.name == name) return def;
  throw ConfigError("unknown experiment '" + name + "' (see `kposim list`)");
}

std::vector<GridPoint> expand_grid(const ExperimentConfig& config) {
  std::vector<GridPoint> points;
  const std::size_t n = config.grid_size();
  points.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    GridPoint g;
    g.index = idx;
    std::size_t rem = idx;
    g.values.resize(config.grid.size());
    for (std::size_t a = config.grid.size(); a-- > 0;) {
      const auto& vals = config.grid[a].values;
      g.values[a] = vals[rem % vals.size()];
      rem /= vals.size();
    }
    for (const auto& a : config.grid) g.names.push_back(a.name);
    points.push_back(std::move(g));
  }
  return points;
}

}  // namespace kposim::exp
