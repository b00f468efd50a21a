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

#include <vector>

#include "kposim/fock.hpp"

namespace kposim {

struct GroundState {
  double energy = 0.0;
  // One state, or an orthonormal pair when the lowest gap is below the
  // degeneracy tolerance.
  std::vector<StateVector> states;
  double gap = 0.0;  // E_1 - E_0
};

/// Lowest eigenpair(s) of a Hermitian operator by dense eigensolve. Throws
/// ParameterError for non-Hermitian input (relative defect > 1e-10).
GroundState ground_state(const OperatorMatrix& h, double degeneracy_tol = 1e-8);

/// Eigenvectors whose energies lie within `window` of the lowest energy.
std::vector<StateVector> low_energy_manifold(const OperatorMatrix& h, double window);

// sum_k |<v_k|psi>|^2 over an orthonormal set.
double manifold_population(const StateVector& psi, const std::vector<StateVector>& manifold);

// Lowest eigenvector of h restricted to states of total parity `parity`.
StateVector parity_ground_state(const OperatorMatrix& h, Parity parity);

}  // namespace kposim
