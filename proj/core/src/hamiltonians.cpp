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

#include "kposim/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kposim/errors.hpp"

namespace kposim {
namespace {

SparseMatrix structure_of(const SparseMatrix& m) {
  SparseMatrix s = m;
  for (int k = 0; k < s.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) it.valueRef() = 1.0;
  return s;
}

// Position of (row, col) in the value array of a compressed row-major matrix.
int locate(const SparseMatrix& pattern, Eigen::Index row, Eigen::Index col) {
  const auto* outer = pattern.outerIndexPtr();
  const auto* inner = pattern.innerIndexPtr();
  const auto* begin = inner + outer[row];
  const auto* end = inner + outer[row + 1];
  const auto* hit = std::lower_bound(begin, end, static_cast<int>(col));
  if (hit == end || *hit != col) throw Error("TimeDependentHamiltonian: entry missing from pattern");
  return static_cast<int>(hit - inner);
}

SparseMatrix kerr_term(const FockSpace& space, int mode, double kerr) {
  const SparseMatrix a = sparse_annihilation(space, mode);
  const SparseMatrix adag = a.adjoint();
  return SparseMatrix(0.5 * kerr * (adag * adag * a * a));
}

SparseMatrix squeeze_term(const FockSpace& space, int mode) {
  const SparseMatrix adag = SparseMatrix(sparse_annihilation(space, mode).adjoint());
  return SparseMatrix(adag * adag);
}

SparseMatrix coupling_term(const FockSpace& space) {
  const SparseMatrix a1 = sparse_annihilation(space, 0);
  const SparseMatrix a2 = sparse_annihilation(space, 1);
  // a1 a2^dag; its adjoint a1^dag a2 is supplied by the with_adjoint term.
  return SparseMatrix(a1 * SparseMatrix(a2.adjoint()));
}

// -(p/2) e^{2i theta} a^dag^2 + h.c. as a with_adjoint coefficient.
Complex pump_coefficient(double p, double theta) { return -0.5 * p * std::polar(1.0, 2.0 * theta); }

}  // namespace

// --- KpoSystemParams --------------------------------------------------------

void KpoSystemParams::validate() const {
  std::ostringstream os;
  if (!(K > 0.0)) os << "K must be > 0; ";
  if (!(p[0] >= 0.0) || !(p[1] >= 0.0)) os << "p must be >= 0; ";
  if (!(r > 0.0)) os << "r must be > 0; ";
  if (!(xi_cd >= 0.0)) os << "xi_cd must be >= 0; ";
  if (!std::isfinite(J) || !std::isfinite(delta_prime)) os << "J and delta_prime must be finite; ";
  for (int l = 0; l < 2; ++l)
    if (!(kappa[l] >= 0.0) || !(gamma_p[l] >= 0.0)) os << "decoherence rates must be >= 0; ";
  if (n_max < 2) os << "n_max must be >= 2; ";
  const auto msg = os.str();
  if (!msg.empty()) throw ParameterError("KpoSystemParams: " + msg);
}

double KpoSystemParams::alpha(int mode) const {
  if (mode < 0 || mode > 1) throw ParameterError("KpoSystemParams::alpha: mode must be 0 or 1");
  return std::sqrt(p[mode] / kerr(mode));
}

// --- TimeDependentHamiltonian ----------------------------------------------

TimeDependentHamiltonian::Builder::Builder(FockSpace space)
    : space_(space), static_(space.dim(), space.dim()) {}

TimeDependentHamiltonian::Builder& TimeDependentHamiltonian::Builder::add_static(const SparseMatrix& op) {
  if (op.rows() != space_.dim() || op.cols() != space_.dim())
    throw ParameterError("Hamiltonian term has the wrong dimension");
  static_ += op;
  return *this;
}

TimeDependentHamiltonian::Builder& TimeDependentHamiltonian::Builder::add_term(
    const SparseMatrix& op, Coefficient coefficient, TermKind kind) {
  if (op.rows() != space_.dim() || op.cols() != space_.dim())
    throw ParameterError("Hamiltonian term has the wrong dimension");
  terms_.push_back({op, std::move(coefficient), kind});
  return *this;
}

TimeDependentHamiltonian TimeDependentHamiltonian::Builder::build() const {
  TimeDependentHamiltonian h(space_);
  SparseMatrix pattern = structure_of(static_);
  for (const auto& t : terms_) {
    pattern += structure_of(t.op);
    if (t.kind == TermKind::with_adjoint) pattern += structure_of(SparseMatrix(t.op.adjoint()));
  }
  pattern.makeCompressed();
  h.pattern_ = pattern;
  h.static_values_.assign(static_cast<size_t>(pattern.nonZeros()), Complex{});

  auto fill = [&](const SparseMatrix& op, Slot& slot) {
    for (int k = 0; k < op.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(op, k); it; ++it) {
        slot.index.push_back(locate(h.pattern_, it.row(), it.col()));
        slot.value.push_back(it.value());
      }
  };
  Slot st;
  fill(static_, st);
  for (size_t i = 0; i < st.index.size(); ++i) h.static_values_[st.index[i]] += st.value[i];

  for (const auto& t : terms_) {
    Term term;
    term.coefficient = t.coefficient;
    term.kind = t.kind;
    fill(t.op, term.direct);
    if (t.kind == TermKind::with_adjoint) fill(SparseMatrix(t.op.adjoint()), term.adjoint);
    h.terms_.push_back(std::move(term));
  }
  return h;
}

void TimeDependentHamiltonian::assemble(double t, SparseMatrix& out) const {
  if (out.nonZeros() != pattern_.nonZeros() || out.rows() != pattern_.rows()) out = pattern_;
  Complex* v = out.valuePtr();
  std::copy(static_values_.begin(), static_values_.end(), v);
  for (const auto& term : terms_) {
    const Complex c = term.coefficient(t);
    if (term.kind == TermKind::self_adjoint) {
      const double re = c.real();
      for (size_t i = 0; i < term.direct.index.size(); ++i) v[term.direct.index[i]] += re * term.direct.value[i];
    } else {
      const Complex cc = std::conj(c);
      for (size_t i = 0; i < term.direct.index.size(); ++i) v[term.direct.index[i]] += c * term.direct.value[i];
      for (size_t i = 0; i < term.adjoint.index.size(); ++i) v[term.adjoint.index[i]] += cc * term.adjoint.value[i];
    }
  }
}

SparseMatrix TimeDependentHamiltonian::sparse_at(double t) const {
  SparseMatrix out = pattern_;
  assemble(t, out);
  return out;
}

OperatorMatrix TimeDependentHamiltonian::at(double t) const {
  return {space_, DenseMatrix(sparse_at(t))};
}

// --- Model Hamiltonians -----------------------------------------------------

OperatorMatrix kpo_hamiltonian(const KpoSystemParams& params, double theta, double detuning) {
  params.validate();
  const FockSpace space(params.n_max, 1);
  const SparseMatrix sq = squeeze_term(space, 0);
  const Complex c = pump_coefficient(params.p[0], theta);
  SparseMatrix h = kerr_term(space, 0, params.K);
  h += SparseMatrix(c * sq);
  h += SparseMatrix(std::conj(c) * SparseMatrix(sq.adjoint()));
  h += SparseMatrix(Complex(detuning) * sparse_number(space, 0));
  return {space, DenseMatrix(h)};
}

TimeDependentHamiltonian cd_modified_hamiltonian(const KpoSystemParams& params, const Schedule& theta) {
  params.validate();
  const FockSpace space(params.n_max, 1);
  const double p = params.p[0];
  const double xi = params.xi_cd;
  return TimeDependentHamiltonian::Builder(space)
      .add_static(kerr_term(space, 0, params.K))
      .add_term(squeeze_term(space, 0), [p, theta](double t) { return pump_coefficient(p, theta.value(t)); },
                TimeDependentHamiltonian::TermKind::with_adjoint)
      .add_term(sparse_number(space, 0), [xi, theta](double t) { return Complex(-xi * theta.derivative(t)); },
                TimeDependentHamiltonian::TermKind::self_adjoint)
      .build();
}

TimeDependentHamiltonian two_kpo_hamiltonian(const KpoSystemParams& params, const Schedule& theta1,
                                             double theta2) {
  params.validate();
  const FockSpace space(params.n_max, 2);
  const double p1 = params.p[0];
  const double xi = params.xi_cd;
  const SparseMatrix sq2 = squeeze_term(space, 1);
  const Complex c2 = pump_coefficient(params.p[1], theta2);
  SparseMatrix fixed = kerr_term(space, 0, params.kerr(0));
  fixed += kerr_term(space, 1, params.kerr(1));
  fixed += SparseMatrix(c2 * sq2);
  fixed += SparseMatrix(std::conj(c2) * SparseMatrix(sq2.adjoint()));
  const SparseMatrix coupling = coupling_term(space);
  fixed += SparseMatrix(Complex(params.J) * coupling);
  fixed += SparseMatrix(Complex(params.J) * SparseMatrix(coupling.adjoint()));
  if (params.delta_prime != 0.0) fixed += SparseMatrix(Complex(params.delta_prime) * sparse_number(space, 1));

  return TimeDependentHamiltonian::Builder(space)
      .add_static(fixed)
      .add_term(squeeze_term(space, 0), [p1, theta1](double t) { return pump_coefficient(p1, theta1.value(t)); },
                TimeDependentHamiltonian::TermKind::with_adjoint)
      .add_term(sparse_number(space, 0), [xi, theta1](double t) { return Complex(-xi * theta1.derivative(t)); },
                TimeDependentHamiltonian::TermKind::self_adjoint)
      .build();
}

TimeDependentHamiltonian beam_splitter_hamiltonian(const KpoSystemParams& params, const Schedule& gate) {
  params.validate();
  const FockSpace space(params.n_max, 2);
  SparseMatrix fixed(space.dim(), space.dim());
  for (int l = 0; l < 2; ++l) {
    const SparseMatrix sq = squeeze_term(space, l);
    const Complex c = pump_coefficient(params.p[l], 0.0);
    fixed += kerr_term(space, l, params.kerr(l));
    fixed += SparseMatrix(c * sq);
    fixed += SparseMatrix(std::conj(c) * SparseMatrix(sq.adjoint()));
  }
  if (params.delta_prime != 0.0) fixed += SparseMatrix(Complex(params.delta_prime) * sparse_number(space, 1));
  const double J = params.J;
  return TimeDependentHamiltonian::Builder(space)
      .add_static(fixed)
      .add_term(coupling_term(space), [J, gate](double t) { return Complex(J * std::cos(gate.value(t))); },
                TimeDependentHamiltonian::TermKind::with_adjoint)
      .build();
}

TimeDependentHamiltonian loading_hamiltonian(const KpoSystemParams& params, const Schedule& pump,
                                             const Schedule& detuning, double theta1, double theta2) {
  params.validate();
  const FockSpace space(params.n_max, 2);
  SparseMatrix fixed = kerr_term(space, 0, params.kerr(0));
  fixed += kerr_term(space, 1, params.kerr(1));
  const SparseMatrix coupling = coupling_term(space);
  fixed += SparseMatrix(Complex(params.J) * coupling);
  fixed += SparseMatrix(Complex(params.J) * SparseMatrix(coupling.adjoint()));

  TimeDependentHamiltonian::Builder b(space);
  b.add_static(fixed);
  const std::array<double, 2> theta{theta1, theta2};
  for (int l = 0; l < 2; ++l) {
    const double th = theta[l];
    b.add_term(squeeze_term(space, l), [pump, th](double t) { return pump_coefficient(pump.value(t), th); },
               TimeDependentHamiltonian::TermKind::with_adjoint);
    b.add_term(sparse_number(space, l), [detuning](double t) { return Complex(detuning.value(t)); },
               TimeDependentHamiltonian::TermKind::self_adjoint);
  }
  return b.build();
}

double effective_potential(const KpoSystemParams& params, Complex alpha, double theta) {
  const double m2 = std::norm(alpha);
  return m2 * (0.5 * params.K * m2 - params.p[0] * std::cos(2.0 * (std::arg(alpha) - theta)));
}

double effective_potential_numeric(const KpoSystemParams& params, Complex alpha, double theta) {
  const FockSpace space(params.n_max, 1);
  const StateVector psi = coherent_state(space, alpha);
  return psi.expectation(kpo_hamiltonian(params, theta)).real();
}

}  // namespace kposim
