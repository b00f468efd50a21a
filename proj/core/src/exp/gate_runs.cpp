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

#include "kposim/exp/gate_runs.hpp"

#include <algorithm>
#include <numbers>

#include "kposim/errors.hpp"
#include "kposim/spectrum.hpp"

namespace kposim::exp {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double evolve_fidelity(const TimeDependentHamiltonian& h, const KpoSystemParams& params, const StateVector& psi0,
                       const StateVector& target, const EvolutionConfig& evo, bool open_system, StepStats& stats,
                       StateVector* final_state) {
  if (open_system) {
    auto rec = lindblad_evolve(h, DissipationRates::from(params), DensityMatrix::from_pure(psi0), evo);
    stats = rec.stats;
    return fidelity(rec.final_state, target);
  }
  auto rec = schrodinger_evolve(h, psi0, evo);
  stats = rec.stats;
  const double f = fidelity(rec.final_state, target);
  if (final_state) *final_state = std::move(rec.final_state);
  return f;
}

}  // namespace

double calibrated_theta_amp(const KpoSystemParams& params, double duration, double target_phase) {
  return calibrate_theta_amp(params, duration, target_phase);
}

GateResult run_gate(const GateRequest& request) {
  const auto& p = request.params;
  p.validate();
  const Schedule gate = Schedule::gate_phase(request.duration, request.theta_amp);
  const bool bs = request.scheme == CouplingScheme::beam_splitter;
  const TimeDependentHamiltonian h = bs ? beam_splitter_hamiltonian(p, gate) : two_kpo_hamiltonian(p, gate);
  const QubitFrame frame(p, bs ? 0.0 : kHalfPi, 0.0, request.truncation);

  EvolutionConfig evo = request.evolution;
  evo.duration = request.duration;

  GateResult out;
  out.target_phases = gate_phases(p, gate);
  const StateVector target = ideal_gate_target(frame.psi_s(), frame, out.target_phases);
  out.fidelity = evolve_fidelity(h, p, frame.psi_s(), target, evo, request.open_system, out.stats, nullptr);

  if (request.basis_states) {
    std::vector<StateVector> finals;
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      const StateVector& psi0 = frame.state(k);
      const StateVector tk = ideal_gate_target(psi0, frame, out.target_phases);
      StepStats stats;
      StateVector final_state = psi0;
      const double f = evolve_fidelity(h, p, psi0, tk, evo, request.open_system, stats, &final_state);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      sum += f;
      if (!request.open_system) finals.push_back(std::move(final_state));
    }
    out.basis_fidelity_mean = sum / 4.0;
    out.basis_fidelity_spread = hi - lo;
    if (!request.open_system) out.phases = extract_phases(finals, frame);
  }
  return out;
}

RotationResult run_rotation(const KpoSystemParams& params, double duration, bool with_cd,
                            const EvolutionConfig& evolution, TruncationPolicy truncation) {
  KpoSystemParams q = params;
  if (!with_cd) q.xi_cd = 0.0;
  q.validate();
  const FockSpace space(q.n_max, 1);
  const StateVector psi0 = cat_state(space, Complex(q.alpha(0), 0.0), Parity::even, truncation);
  const Schedule theta = Schedule::rotation(duration);
  const auto h = cd_modified_hamiltonian(q, theta);
  EvolutionConfig evo = evolution;
  evo.duration = duration;
  auto rec = schrodinger_evolve(h, psi0, evo);
  StateVector target = rotate(psi0, theta.value(duration));
  const double f = fidelity(rec.final_state, target);
  return {f, std::move(rec.final_state), std::move(target), rec.stats};
}

StateVector uncoupled_loading_target(const KpoSystemParams& params, double p_max) {
  KpoSystemParams m1 = params;
  m1.p = {p_max, p_max};
  KpoSystemParams m2 = m1;
  m2.K = params.kerr(1);
  const StateVector g1 = parity_ground_state(kpo_hamiltonian(m1, kHalfPi), Parity::even);
  const StateVector g2 = parity_ground_state(kpo_hamiltonian(m2, 0.0), Parity::even);
  return tensor(g1.normalized(), g2.normalized());
}

LoadingResult run_loading(const KpoSystemParams& params, double duration, double p_max, double delta_max,
                          double window, const EvolutionConfig& evolution) {
  params.validate();
  const FockSpace space(params.n_max, 2);
  const auto [pump, detuning] = loading_schedules(duration, p_max, delta_max);
  const auto h = loading_hamiltonian(params, pump, detuning, kHalfPi, 0.0);
  EvolutionConfig evo = evolution;
  evo.duration = duration;
  auto rec = schrodinger_evolve(h, fock_state(space, 0, 0), evo);

  KpoSystemParams final_params = params;
  final_params.p = {p_max, p_max};
  final_params.delta_prime = 0.0;
  const OperatorMatrix h_final = two_kpo_hamiltonian(final_params, Schedule::constant(kHalfPi, duration)).at(0.0);
  const auto manifold = low_energy_manifold(h_final, window);

  LoadingResult out;
  out.fidelity = std::clamp(manifold_population(rec.final_state, manifold), 0.0, 1.0);
  out.ground_overlap = std::clamp(manifold_population(uncoupled_loading_target(params, p_max), manifold), 0.0, 1.0);
  out.manifold_size = manifold.size();
  out.stats = rec.stats;
  return out;
}

}  // namespace kposim::exp
