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
#include <functional>
#include <vector>

#include "kposim/fock.hpp"
#include "kposim/schedules.hpp"

namespace kposim {

/// Physical parameters of one or two KPOs, all rates in units of K (K = 1 by
/// convention). Mode 0 is KPO 1 (Kerr K), mode 1 is KPO 2 (Kerr rK).
struct KpoSystemParams {
  double K = 1.0;
  std::array<double, 2> p{7.0, 7.0};
  double J = 0.2;
  double r = 1.0;
  double xi_cd = 1.0;        // CD scaling: 1 ideal, 0 off
  double delta_prime = 0.0;  // constant detuning error on KPO 2
  std::array<double, 2> kappa{0.0, 0.0};
  std::array<double, 2> gamma_p{0.0, 0.0};
  int n_max = 30;

  // Throws ParameterError when an invariant fails.
  void validate() const;

  double kerr(int mode) const { return mode == 0 ? K : r * K; }
  // Coherent amplitude sqrt(p_l / K_l) of the KPO ground states.
  double alpha(int mode) const;
};

/// H(t) = H_static + sum_k [c_k(t) O_k + conj(c_k(t)) O_k^dagger] (or
/// Re c_k(t) O_k for self-adjoint terms). All terms share one sparsity pattern
/// so re-assembly at a new time is a pass over the stored values.
class TimeDependentHamiltonian {
 public:
  using Coefficient = std::function<Complex(double)>;
  enum class TermKind { self_adjoint, with_adjoint };

  class Builder {
   public:
    explicit Builder(FockSpace space);
    Builder& add_static(const SparseMatrix& op);
    Builder& add_term(const SparseMatrix& op, Coefficient coefficient, TermKind kind);
    TimeDependentHamiltonian build() const;

   private:
    struct Pending {
      SparseMatrix op;
      Coefficient coefficient;
      TermKind kind;
    };
    FockSpace space_;
    SparseMatrix static_;
    std::vector<Pending> terms_;
  };

  const FockSpace& space() const noexcept { return space_; }
  Eigen::Index dim() const noexcept { return space_.dim(); }

  // Writes H(t) into `out`, which is (re)initialised to the shared pattern on
  // first use. Safe to call concurrently with distinct `out` objects.
  void assemble(double t, SparseMatrix& out) const;
  SparseMatrix sparse_at(double t) const;
  OperatorMatrix at(double t) const;

 private:
  struct Slot {
    std::vector<int> index;
    std::vector<Complex> value;
  };
  struct Term {
    Slot direct;
    Slot adjoint;
    Coefficient coefficient;
    TermKind kind;
  };

  explicit TimeDependentHamiltonian(FockSpace space) : space_(space) {}

  FockSpace space_;
  SparseMatrix pattern_;
  std::vector<Complex> static_values_;
  std::vector<Term> terms_;
};

/// (K/2) a^dag^2 a^2 - (p/2)(a^dag^2 e^{2i theta} + a^2 e^{-2i theta}) + detuning * a^dag a
/// on a single mode, with K = params.K and p = params.p[0].
OperatorMatrix kpo_hamiltonian(const KpoSystemParams& params, double theta, double detuning = 0.0);

/// Single KPO with its pump phase following `theta`, plus the counter-diabatic
/// term -xi_cd * d(theta)/dt * a^dag a.
TimeDependentHamiltonian cd_modified_hamiltonian(const KpoSystemParams& params, const Schedule& theta);

/// Two KPOs with always-on coupling J (a1 a2^dag + a1^dag a2). KPO 1 follows
/// `theta1` with the CD term -xi_cd * d(theta1)/dt * n1; KPO 2 has fixed phase
/// `theta2` and the static detuning error delta_prime * n2.
TimeDependentHamiltonian two_kpo_hamiltonian(const KpoSystemParams& params, const Schedule& theta1,
                                             double theta2 = 0.0);

/// Reference gate with ideal tunable coupling: both pump phases at zero and
/// g(t) = J cos(theta(t)) (a1 a2^dag + a1^dag a2), no CD term.
TimeDependentHamiltonian beam_splitter_hamiltonian(const KpoSystemParams& params, const Schedule& gate);

/// Adiabatic loading: both pumps follow `pump` (amplitude p(t)), both modes
/// carry the detuning `detuning(t) * n_l`, phases fixed at theta1/theta2.
/// params.p is ignored.
TimeDependentHamiltonian loading_hamiltonian(const KpoSystemParams& params, const Schedule& pump,
                                             const Schedule& detuning, double theta1, double theta2);

// V(alpha) = |alpha|^2 ((K/2)|alpha|^2 - p cos(2(arg(alpha) - theta))).
double effective_potential(const KpoSystemParams& params, Complex alpha, double theta);

// <alpha|H(theta)|alpha> on the truncated space; cross-check for the closed form.
double effective_potential_numeric(const KpoSystemParams& params, Complex alpha, double theta);

}  // namespace kposim
