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

#pragma once

#include <optional>

#include "kposim/analysis.hpp"
#include "kposim/dynamics.hpp"
#include "kposim/hamiltonians.hpp"

namespace kposim::exp {

enum class CouplingScheme { tunable_cd, beam_splitter };

struct GateRequest {
  KpoSystemParams params;
  double duration = 1.0;
  double theta_amp = 0.1;
  CouplingScheme scheme = CouplingScheme::tunable_cd;
  // Lindblad evolution with params.kappa / params.gamma_p; otherwise Schroedinger.
  bool open_system = false;
  // Also evolve each basis state |ij> and extract the gate phases.
  bool basis_states = false;
  EvolutionConfig evolution;  // duration is taken from `duration`
  TruncationPolicy truncation = TruncationPolicy::warn;
};

struct GateResult {
  double fidelity = 0.0;  // initial state Psi_s
  std::optional<PhaseReport> phases;
  double basis_fidelity_mean = 0.0;
  double basis_fidelity_spread = 0.0;  // max - min over the four basis states
  Eigen::Matrix2d target_phases;       // phases of the ideal gate used as target
  StepStats stats;
};

/// Rzz gate from Psi_s (and optionally each basis state) compared against the
/// ideal gate built from the quadrature phases.
GateResult run_gate(const GateRequest& request);

// theta_amp reaching `target_phase` for phi_10 - phi_00 at duration T.
double calibrated_theta_amp(const KpoSystemParams& params, double duration, double target_phase);

struct RotationResult {
  double fidelity = 0.0;
  StateVector final_state;
  StateVector target;
  StepStats stats;
};

/// Single KPO (p = params.p[0]) rotated from theta = 0 to pi/2 with the
/// rotation schedule, starting from the even cat; target is the ideally
/// rotated cat. `with_cd` selects xi_cd = params.xi_cd or 0.
RotationResult run_rotation(const KpoSystemParams& params, double duration, bool with_cd,
                            const EvolutionConfig& evolution, TruncationPolicy truncation = TruncationPolicy::warn);

struct LoadingResult {
  double fidelity = 0.0;           // population of the ground manifold of H_tot(T)
  double ground_overlap = 0.0;     // population of the J = 0 ground state in that manifold
  std::size_t manifold_size = 0;
  StepStats stats;
};

/// Vacuum loaded by the pump ramp 0 -> p_max with detuning Delta_max -> 0,
/// theta_1 = pi/2, theta_2 = 0. `window` sets the ground manifold width.
LoadingResult run_loading(const KpoSystemParams& params, double duration, double p_max, double delta_max,
                          double window, const EvolutionConfig& evolution);

/// Product of the per-mode even-parity ground states of the uncoupled KPOs at
/// pump p_max (the state adiabatically reached from vacuum when J = 0).
StateVector uncoupled_loading_target(const KpoSystemParams& params, double p_max);

}  // namespace kposim::exp
