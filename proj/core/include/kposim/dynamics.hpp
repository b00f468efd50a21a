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

#include <array>
#include <vector>

#include "kposim/fock.hpp"
#include "kposim/hamiltonians.hpp"

namespace kposim {

enum class IntegratorMethod { rk4_fixed, rk_adaptive };

// Form of the dephasing dissipator. `unit_weight` is
//   gamma ([n rho, n] + [n, rho n]),
// with no 1/2 prefactor; `conventional` is gamma/2 times the same bracket.
enum class DephasingForm { unit_weight, conventional };

struct EvolutionConfig {
  double duration = 1.0;
  IntegratorMethod method = IntegratorMethod::rk4_fixed;
  // Requested fixed step. The integrator uses ceil(T / step) equal steps so
  // that the step divides T exactly.
  double step = 1e-4;
  // Relative and absolute tolerance of the adaptive embedded pair.
  double tolerance = 1e-10;
  bool renormalize = false;
  // Observables are sampled every `monitor_stride` steps (and at t = T).
  int monitor_stride = 100;
  DephasingForm dephasing = DephasingForm::unit_weight;

  void validate() const;
};

struct Sample {
  double t = 0.0;
  double norm = 1.0;   // ||psi|| or Tr(rho)
  double energy = 0.0; // <H(t)>
  std::vector<double> photons;  // <n_l> per mode
};

struct StepStats {
  long steps = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
  double step_used = 0.0;        // fixed step, or the last accepted adaptive step
  double max_norm_drift = 0.0;   // max | ||psi|| - 1 | or | Tr rho - 1 |
  double min_eigenvalue = 1.0;   // density matrices only
};

template <class State>
struct EvolutionRecord {
  State final_state;
  std::vector<Sample> samples;
  StepStats stats;
};

using PureRecord = EvolutionRecord<StateVector>;
using MixedRecord = EvolutionRecord<DensityMatrix>;

struct DissipationRates {
  std::array<double, 2> kappa{0.0, 0.0};
  std::array<double, 2> gamma_p{0.0, 0.0};

  static DissipationRates from(const KpoSystemParams& params) { return {params.kappa, params.gamma_p}; }
  bool any() const;
};

inline constexpr double kNormDriftLimit = 1e-6;

/// i d|psi>/dt = H(t)|psi> on [0, T] (hbar = 1, rates in units of K).
/// Throws IntegrationError when the norm drifts by more than 1e-6.
PureRecord schrodinger_evolve(const TimeDependentHamiltonian& h, const StateVector& psi0,
                              const EvolutionConfig& config);

/// Master equation
///   d rho/dt = -i[H, rho] + sum_l kappa_l/2 ([a rho, a^dag] + [a, rho a^dag])
///              + gamma_l ([n rho, n] + [n, rho n])
/// on the full density matrix. The state is symmetrised every monitor stride.
/// Throws IntegrationError for trace drift > 1e-6 or an eigenvalue < -1e-6.
MixedRecord lindblad_evolve(const TimeDependentHamiltonian& h, const DissipationRates& rates,
                            const DensityMatrix& rho0, const EvolutionConfig& config);

// |<target|psi>|^2, and <target|rho|target> for mixed states. Values outside
// [0, 1] are clamped; clamping by more than 1e-9 emits a warning.
double fidelity(const StateVector& state, const StateVector& target);
double fidelity(const DensityMatrix& state, const StateVector& target);

// 0.5 * ||a - b||_1 via the eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace kposim
