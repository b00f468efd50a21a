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
#include "kposim/hamiltonians.hpp"
#include "kposim/schedules.hpp"

namespace kposim {

/// Computational basis of two KPO qubits: |i j> = |s_i alpha_1> (x) |s_j alpha_2>
/// with s_0 = +1, s_1 = -1, alpha_1 = sqrt(p_1/K) e^{i theta_1} and
/// alpha_2 = sqrt(p_2/(rK)) e^{i theta_2}. Basis index is 2 i + j.
class QubitFrame {
 public:
  QubitFrame(const KpoSystemParams& params, double theta1, double theta2 = 0.0,
             TruncationPolicy policy = TruncationPolicy::warn);

  const FockSpace& space() const noexcept { return space_; }
  Complex alpha(int mode) const { return alpha_[mode]; }
  const StateVector& state(int i, int j) const { return basis_[2 * i + j]; }
  const StateVector& state(int index) const { return basis_[index]; }
  // sum_k |k> renormalised with the exact (non-orthogonal) norm.
  const StateVector& psi_s() const noexcept { return psi_s_; }
  const Eigen::Matrix4cd& gram() const noexcept { return gram_; }
  double gram_defect() const;

  // Solves G c = (<k|psi>)_k. `residual` receives ||psi - sum c_k |k>|| / ||psi||.
  Eigen::Vector4cd coordinates(const StateVector& psi, double* residual = nullptr) const;

 private:
  FockSpace space_;
  Complex alpha_[2];
  std::vector<StateVector> basis_;
  StateVector psi_s_;
  Eigen::Matrix4cd gram_;
};

// Phases phi_ij acquired by |i j> during the gate under Schroedinger
// evolution: phi_00 = phi_11 = -analytic_gate_phase, phi_01 = phi_10 = +analytic_gate_phase.
Eigen::Matrix2d gate_phases(const KpoSystemParams& params, const Schedule& gate);

// Wraps an angle to (-pi, pi].
double wrap_phase(double phi);

struct PhaseReport {
  Eigen::Matrix2d phase;       // arg <ij|psi_ij(T)>
  Eigen::Matrix2d relative;    // phi_ij - phi_00, wrapped
  Eigen::Matrix2d population;  // |<ij|psi_ij(T)>|^2
};

/// `finals[2 i + j]` is the state evolved from frame.state(i, j). Throws
/// PhaseUnreliableError when an overlap magnitude falls below 0.5.
PhaseReport extract_phases(const std::vector<StateVector>& finals, const QubitFrame& frame);

/// Decomposes psi0 in the frame (Gram-corrected), multiplies component ij by
/// e^{i phi_ij} and renormalises. Throws FrameError when the projection
/// residual exceeds 1e-3.
StateVector ideal_gate_target(const StateVector& psi0, const QubitFrame& frame, const Eigen::Matrix2d& phases);

struct GridSpec {
  double x_min = -6.0, x_max = 6.0;
  double y_min = -6.0, y_max = 6.0;
  int nx = 121, ny = 121;

  void validate() const;
};

struct WignerGrid {
  std::vector<double> x;
  std::vector<double> y;
  Eigen::MatrixXd values;  // values(iy, ix) = W(x[ix] + i y[iy])
  double imag_residue = 0.0;

  // Trapezoidal integral of W over the grid.
  double integral() const;
};

/// W(xi) = (2/pi) Tr[D(-xi) rho D(xi) P], xi = x + i y, normalised so that a
/// coherent state |alpha> peaks at xi = alpha. Evaluated with the closed-form
/// Fock matrix elements
///   W_mn(xi) = (2/pi) (-1)^m sqrt(m!/n!) (2 xi)^(n-m) L_m^(n-m)(4|xi|^2) e^{-2|xi|^2},
/// which is the trace formula without cutoff error in D. Single-mode only.
WignerGrid wigner(const DensityMatrix& rho, const GridSpec& grid = {});
WignerGrid wigner(const StateVector& psi, const GridSpec& grid = {});
double wigner_point(const DensityMatrix& rho, Complex xi);

// Trace formula with truncated displacement operators, for cross-checks near
// the origin.
double wigner_point_displacement(const DensityMatrix& rho, Complex xi);

// Partial trace of a two-mode state onto `keep`.
DensityMatrix reduce_mode(const DensityMatrix& rho, int keep);
DensityMatrix reduce_mode(const StateVector& psi, int keep);

}  // namespace kposim
