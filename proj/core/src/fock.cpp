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

#include "kposim/fock.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "kposim/diagnostics.hpp"
#include "kposim/errors.hpp"

namespace kposim {
namespace {

constexpr double kTailThreshold = 1e-8;

void require_mode(const FockSpace& space, int mode) {
  if (mode < 0 || mode >= space.n_modes()) {
    std::ostringstream os;
    os << "mode " << mode << " out of range for a " << space.n_modes() << "-mode space";
    throw ParameterError(os.str());
  }
}

void require_same_space(const FockSpace& a, const FockSpace& b, const char* what) {
  if (!(a == b)) throw ParameterError(std::string(what) + ": Fock spaces differ");
}

// Embeds a single-mode sparse operator into `space` at `mode`.
SparseMatrix embed(const FockSpace& space, const SparseMatrix& single, int mode) {
  if (space.n_modes() == 1) return single;
  const int n = space.n_max();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<size_t>(single.nonZeros()) * n);
  for (int k = 0; k < single.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(single, k); it; ++it) {
      for (int other = 0; other < n; ++other) {
        const auto r = mode == 0 ? it.row() * n + other : other * n + it.row();
        const auto c = mode == 0 ? it.col() * n + other : other * n + it.col();
        trips.emplace_back(r, c, it.value());
      }
    }
  }
  SparseMatrix out(space.dim(), space.dim());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix single_annihilation(int n_max) {
  SparseMatrix a(n_max, n_max);
  std::vector<Eigen::Triplet<Complex>> trips;
  for (int n = 1; n < n_max; ++n) trips.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

void check_truncation(int n_max, Complex alpha, TruncationPolicy policy, const char* what) {
  const double tail = coherent_tail_weight(n_max, alpha);
  if (tail <= kTailThreshold) return;
  std::ostringstream os;
  os << what << ": |alpha| = " << std::abs(alpha) << " leaves tail weight " << tail
     << " beyond n_max = " << n_max;
  if (policy == TruncationPolicy::strict) throw TruncationError(os.str());
  diagnostics::warn(os.str());
}

}  // namespace

FockSpace::FockSpace(int n_max, int n_modes) : n_max_(n_max), n_modes_(n_modes) {
  if (n_max < 2) throw ParameterError("FockSpace: n_max must be >= 2");
  if (n_modes != 1 && n_modes != 2) throw ParameterError("FockSpace: n_modes must be 1 or 2");
  dim_ = n_modes == 1 ? n_max : static_cast<Eigen::Index>(n_max) * n_max;
}

int FockSpace::occupation(Eigen::Index index, int mode) const {
  if (n_modes_ == 1) return static_cast<int>(index);
  return mode == 0 ? static_cast<int>(index / n_max_) : static_cast<int>(index % n_max_);
}

// --- OperatorMatrix ---------------------------------------------------------

OperatorMatrix::OperatorMatrix(FockSpace space, DenseMatrix entries)
    : space_(space), m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() != space_.dim())
    throw ParameterError("OperatorMatrix: shape does not match the Fock space dimension");
}

OperatorMatrix OperatorMatrix::identity(const FockSpace& space) {
  return {space, DenseMatrix::Identity(space.dim(), space.dim())};
}

OperatorMatrix OperatorMatrix::zero(const FockSpace& space) {
  return {space, DenseMatrix::Zero(space.dim(), space.dim())};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {space_, m_.adjoint()}; }

SparseMatrix OperatorMatrix::sparse(double drop_below) const {
  SparseMatrix s = m_.sparseView(1.0, drop_below);
  s.makeCompressed();
  return s;
}

double OperatorMatrix::hermiticity_defect() const {
  const double scale = m_.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() / scale;
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& rhs) const {
  require_same_space(space_, rhs.space_, "operator product");
  return {space_, m_ * rhs.m_};
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& rhs) const {
  require_same_space(space_, rhs.space_, "operator sum");
  return {space_, m_ + rhs.m_};
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& rhs) const {
  require_same_space(space_, rhs.space_, "operator difference");
  return {space_, m_ - rhs.m_};
}

OperatorMatrix OperatorMatrix::operator*(Complex s) const { return {space_, m_ * s}; }

// --- StateVector ------------------------------------------------------------

StateVector::StateVector(FockSpace space, DenseVector amplitudes)
    : space_(space), amp_(std::move(amplitudes)) {
  if (amp_.size() != space_.dim())
    throw ParameterError("StateVector: length does not match the Fock space dimension");
}

StateVector StateVector::normalized(FockSpace space, DenseVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 1e-300)) throw DegenerateStateError("StateVector: cannot normalize a zero vector");
  return {space, amplitudes / n};
}

StateVector StateVector::normalized() const { return normalized(space_, amp_); }

Complex StateVector::inner(const StateVector& other) const {
  require_same_space(space_, other.space_, "inner product");
  return amp_.dot(other.amp_);  // conjugates the left operand
}

Complex StateVector::expectation(const OperatorMatrix& op) const {
  require_same_space(space_, op.space(), "expectation");
  return amp_.dot(op.matrix() * amp_);
}

StateVector StateVector::operator*(Complex s) const { return {space_, amp_ * s}; }

// --- DensityMatrix ----------------------------------------------------------

DensityMatrix::DensityMatrix(FockSpace space, DenseMatrix entries)
    : space_(space), m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() != space_.dim())
    throw ParameterError("DensityMatrix: shape does not match the Fock space dimension");
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return {psi.space(), psi.amplitudes() * psi.amplitudes().adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(const FockSpace& space) {
  const auto d = space.dim();
  return {space, DenseMatrix::Identity(d, d) / static_cast<double>(d)};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  const DenseMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Complex DensityMatrix::expectation(const OperatorMatrix& op) const {
  require_same_space(space_, op.space(), "expectation");
  return (m_ * op.matrix()).trace();
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double eig_tol) const {
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) throw ParameterError("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > trace_tol)
    throw ParameterError("DensityMatrix: trace differs from 1");
  if (min_eigenvalue() < -eig_tol) throw ParameterError("DensityMatrix: negative eigenvalue");
}

// --- Operators --------------------------------------------------------------

SparseMatrix sparse_annihilation(const FockSpace& space, int mode) {
  require_mode(space, mode);
  return embed(space, single_annihilation(space.n_max()), mode);
}

SparseMatrix sparse_number(const FockSpace& space, int mode) {
  require_mode(space, mode);
  SparseMatrix n(space.dim(), space.dim());
  n.reserve(Eigen::VectorXi::Constant(space.dim(), 1));
  for (Eigen::Index i = 0; i < space.dim(); ++i) n.insert(i, i) = space.occupation(i, mode);
  n.makeCompressed();
  return n;
}

SparseMatrix sparse_identity(const FockSpace& space) {
  SparseMatrix id(space.dim(), space.dim());
  id.setIdentity();
  return id;
}

OperatorMatrix annihilation_op(const FockSpace& space, int mode) {
  return {space, DenseMatrix(sparse_annihilation(space, mode))};
}

OperatorMatrix creation_op(const FockSpace& space, int mode) {
  return annihilation_op(space, mode).adjoint();
}

OperatorMatrix number_op(const FockSpace& space, int mode) {
  return {space, DenseMatrix(sparse_number(space, mode))};
}

OperatorMatrix parity_op(const FockSpace& space) {
  DenseMatrix p = DenseMatrix::Zero(space.dim(), space.dim());
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    int total = 0;
    for (int m = 0; m < space.n_modes(); ++m) total += space.occupation(i, m);
    p(i, i) = (total % 2 == 0) ? 1.0 : -1.0;
  }
  return {space, p};
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.space().n_modes() != 1 || b.space().n_modes() != 1)
    throw ParameterError("tensor: both operands must be single-mode");
  if (a.space().n_max() != b.space().n_max())
    throw ParameterError("tensor: operands have different n_max");
  const auto n = a.dim();
  DenseMatrix out(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out.block(i * n, j * n, n, n) = a(i, j) * b.matrix();
  return {a.space().two_mode(), std::move(out)};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.space().n_modes() != 1 || b.space().n_modes() != 1)
    throw ParameterError("tensor: both states must be single-mode");
  if (a.space().n_max() != b.space().n_max())
    throw ParameterError("tensor: states have different n_max");
  const auto n = a.dim();
  DenseVector out(n * n);
  for (Eigen::Index i = 0; i < n; ++i) out.segment(i * n, n) = a.amplitudes()(i) * b.amplitudes();
  return {a.space().two_mode(), std::move(out)};
}

StateVector fock_state(const FockSpace& space, int n) {
  if (space.n_modes() != 1) throw ParameterError("fock_state: use the two-index overload");
  if (n < 0 || n >= space.n_max()) throw ParameterError("fock_state: level out of range");
  DenseVector v = DenseVector::Zero(space.dim());
  v(n) = 1.0;
  return {space, v};
}

StateVector fock_state(const FockSpace& space, int n1, int n2) {
  if (space.n_modes() != 2) throw ParameterError("fock_state: two-mode space required");
  if (n1 < 0 || n1 >= space.n_max() || n2 < 0 || n2 >= space.n_max())
    throw ParameterError("fock_state: level out of range");
  DenseVector v = DenseVector::Zero(space.dim());
  v(static_cast<Eigen::Index>(n1) * space.n_max() + n2) = 1.0;
  return {space, v};
}

double coherent_tail_weight(int n_max, Complex alpha) {
  // Poisson tail sum_{n >= n_max} e^{-|a|^2} |a|^{2n} / n!, summed from the
  // cutoff upwards in log space so that tiny tails stay accurate.
  const double mean = std::norm(alpha);
  if (mean == 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int n = n_max;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    tail += term;
    if (n > mean && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (n > n_max + 100000) break;
  }
  return tail;
}

StateVector coherent_state(const FockSpace& space, Complex alpha, TruncationPolicy policy) {
  if (space.n_modes() != 1) throw ParameterError("coherent_state: single-mode space required");
  check_truncation(space.n_max(), alpha, policy, "coherent_state");
  DenseVector c(space.dim());
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < space.n_max(); ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return StateVector::normalized(space, c);
}

StateVector cat_state(const FockSpace& space, Complex alpha, Parity parity, TruncationPolicy policy) {
  if (space.n_modes() != 1) throw ParameterError("cat_state: single-mode space required");
  check_truncation(space.n_max(), alpha, policy, "cat_state");
  // Unnormalized coherent amplitudes; the +/- combination keeps only even or
  // odd levels, which are then set exactly rather than by cancellation.
  DenseVector c(space.dim());
  c(0) = 1.0;
  for (int n = 1; n < space.n_max(); ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  const int keep = parity == Parity::even ? 0 : 1;
  for (int n = 0; n < space.n_max(); ++n)
    if (n % 2 != keep) c(n) = 0.0;
  if (c.norm() == 0.0)
    throw DegenerateStateError("cat_state: odd cat with alpha = 0 is the zero vector");
  return StateVector::normalized(space, c);
}

OperatorMatrix displacement_op(const FockSpace& space, Complex xi, TruncationPolicy policy) {
  if (space.n_modes() != 1) throw ParameterError("displacement_op: single-mode space required");
  check_truncation(space.n_max(), xi, policy, "displacement_op");
  const DenseMatrix a = annihilation_op(space).matrix();
  const DenseMatrix generator = xi * a.adjoint() - std::conj(xi) * a;
  return {space, generator.exp()};
}

StateVector rotate(const StateVector& psi, double theta, int mode) {
  const auto& space = psi.space();
  require_mode(space, mode);
  DenseVector out = psi.amplitudes();
  for (Eigen::Index i = 0; i < space.dim(); ++i)
    out(i) *= std::polar(1.0, theta * space.occupation(i, mode));
  return {space, out};
}

}  // namespace kposim
