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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace kposim {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};

/// Truncated Fock space of one or two bosonic modes. Basis states of a single
/// mode are |0>, ..., |n_max - 1>; two modes use the Kronecker ordering
/// index = n1 * n_max + n2, i.e. mode 0 is the slow index.
class FockSpace {
 public:
  FockSpace(int n_max, int n_modes = 1);

  int n_max() const noexcept { return n_max_; }
  int n_modes() const noexcept { return n_modes_; }
  Eigen::Index dim() const noexcept { return dim_; }

  FockSpace single_mode() const { return FockSpace(n_max_, 1); }
  FockSpace two_mode() const { return FockSpace(n_max_, 2); }

  // Photon number of `mode` in basis state `index`.
  int occupation(Eigen::Index index, int mode) const;

  friend bool operator==(const FockSpace&, const FockSpace&) = default;

 private:
  int n_max_;
  int n_modes_;
  Eigen::Index dim_;
};

/// Dense operator on a FockSpace.
class OperatorMatrix {
 public:
  OperatorMatrix(FockSpace space, DenseMatrix entries);

  static OperatorMatrix identity(const FockSpace& space);
  static OperatorMatrix zero(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  const DenseMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  OperatorMatrix adjoint() const;
  SparseMatrix sparse(double drop_below = 0.0) const;

  // Max-norm of (A - A^dagger) relative to the max-norm of A.
  double hermiticity_defect() const;
  bool is_hermitian(double rel_tol = 1e-12) const { return hermiticity_defect() <= rel_tol; }

  OperatorMatrix operator*(const OperatorMatrix& rhs) const;
  OperatorMatrix operator+(const OperatorMatrix& rhs) const;
  OperatorMatrix operator-(const OperatorMatrix& rhs) const;
  OperatorMatrix operator*(Complex s) const;

 private:
  FockSpace space_;
  DenseMatrix m_;
};

inline OperatorMatrix operator*(Complex s, const OperatorMatrix& op) { return op * s; }

/// Pure state. Constructing from raw amplitudes does not normalize; use
/// `normalized` for that. Integrator output keeps its drift for diagnostics.
class StateVector {
 public:
  StateVector(FockSpace space, DenseVector amplitudes);

  static StateVector normalized(FockSpace space, DenseVector amplitudes);

  const FockSpace& space() const noexcept { return space_; }
  const DenseVector& amplitudes() const noexcept { return amp_; }
  Eigen::Index dim() const noexcept { return amp_.size(); }

  double norm() const { return amp_.norm(); }
  StateVector normalized() const;

  // <this|other>
  Complex inner(const StateVector& other) const;
  Complex expectation(const OperatorMatrix& op) const;

  StateVector operator*(Complex s) const;

 private:
  FockSpace space_;
  DenseVector amp_;
};

/// Mixed state. `validate` enforces Hermiticity (1e-10), unit trace (1e-8)
/// and eigenvalues >= -1e-8; the constructor itself only checks shape.
class DensityMatrix {
 public:
  DensityMatrix(FockSpace space, DenseMatrix entries);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(const FockSpace& space);

  const FockSpace& space() const noexcept { return space_; }
  const DenseMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  Complex trace() const { return m_.trace(); }
  double purity() const;
  double min_eigenvalue() const;
  Complex expectation(const OperatorMatrix& op) const;

  void validate(double herm_tol = 1e-10, double trace_tol = 1e-8, double eig_tol = 1e-8) const;

 private:
  FockSpace space_;
  DenseMatrix m_;
};

enum class TruncationPolicy { warn, strict };
enum class Parity { even, odd };

// Ladder operators, embedded into the full space for two-mode spaces.
OperatorMatrix annihilation_op(const FockSpace& space, int mode = 0);
OperatorMatrix creation_op(const FockSpace& space, int mode = 0);
OperatorMatrix number_op(const FockSpace& space, int mode = 0);
OperatorMatrix parity_op(const FockSpace& space);

// Same operators in sparse form, used by the Hamiltonian assembly.
SparseMatrix sparse_annihilation(const FockSpace& space, int mode = 0);
SparseMatrix sparse_number(const FockSpace& space, int mode = 0);
SparseMatrix sparse_identity(const FockSpace& space);

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector tensor(const StateVector& a, const StateVector& b);

StateVector fock_state(const FockSpace& space, int n);
StateVector fock_state(const FockSpace& space, int n1, int n2);

// Weight of |alpha> beyond the cutoff, before renormalization.
double coherent_tail_weight(int n_max, Complex alpha);

// Truncated coherent state, renormalized. The tail weight is checked against
// 1e-8: a warning under `warn`, TruncationError under `strict`.
StateVector coherent_state(const FockSpace& space, Complex alpha,
                           TruncationPolicy policy = TruncationPolicy::warn);

StateVector cat_state(const FockSpace& space, Complex alpha, Parity parity,
                      TruncationPolicy policy = TruncationPolicy::warn);

// exp(xi a^dagger - xi^* a) by scaling and squaring on the truncated
// generator. Single-mode spaces only.
OperatorMatrix displacement_op(const FockSpace& space, Complex xi,
                               TruncationPolicy policy = TruncationPolicy::warn);

// exp(i theta a^dagger a) acting on `mode`; rotates phase-space pictures by theta.
StateVector rotate(const StateVector& psi, double theta, int mode = 0);

}  // namespace kposim
