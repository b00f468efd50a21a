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

#include "kposim/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kposim/errors.hpp"

namespace kposim {
namespace {

std::vector<StateVector> frame_basis(const FockSpace& single, const Complex alpha[2], TruncationPolicy policy) {
  const StateVector plus1 = coherent_state(single, alpha[0], policy);
  const StateVector minus1 = coherent_state(single, -alpha[0], policy);
  const StateVector plus2 = coherent_state(single, alpha[1], policy);
  const StateVector minus2 = coherent_state(single, -alpha[1], policy);
  return {tensor(plus1, plus2), tensor(plus1, minus2), tensor(minus1, plus2), tensor(minus1, minus2)};
}

StateVector sum_basis(const std::vector<StateVector>& basis) {
  DenseVector v = DenseVector::Zero(basis[0].dim());
  for (const auto& b : basis) v += b.amplitudes();
  return StateVector::normalized(basis[0].space(), std::move(v));
}

}  // namespace

QubitFrame::QubitFrame(const KpoSystemParams& params, double theta1, double theta2, TruncationPolicy policy)
    : space_(params.n_max, 2),
      alpha_{std::polar(params.alpha(0), theta1), std::polar(params.alpha(1), theta2)},
      basis_(frame_basis(FockSpace(params.n_max, 1), alpha_, policy)),
      psi_s_(sum_basis(basis_)) {
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) gram_(k, l) = basis_[k].inner(basis_[l]);
}

double QubitFrame::gram_defect() const {
  return (gram_ - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

Eigen::Vector4cd QubitFrame::coordinates(const StateVector& psi, double* residual) const {
  if (!(psi.space() == space_)) throw ParameterError("QubitFrame::coordinates: state is not on the frame's space");
  Eigen::Vector4cd s;
  for (int k = 0; k < 4; ++k) s(k) = basis_[k].inner(psi);
  const Eigen::Vector4cd c = gram_.partialPivLu().solve(s);
  if (residual) {
    DenseVector r = psi.amplitudes();
    for (int k = 0; k < 4; ++k) r -= c(k) * basis_[k].amplitudes();
    *residual = r.norm() / psi.norm();
  }
  return c;
}

Eigen::Matrix2d gate_phases(const KpoSystemParams& params, const Schedule& gate) {
  const double phi = analytic_gate_phase(params, gate);
  Eigen::Matrix2d out;
  out << -phi, phi, phi, -phi;
  return out;
}

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

PhaseReport extract_phases(const std::vector<StateVector>& finals, const QubitFrame& frame) {
  if (finals.size() != 4) throw ParameterError("extract_phases: expected four final states");
  PhaseReport report;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex o = frame.state(i, j).inner(finals[2 * i + j]);
      if (std::abs(o) < 0.5) {
        std::ostringstream os;
        os << "extract_phases: |<" << i << j << "|psi(T)>| = " << std::abs(o) << " < 0.5, state left the qubit space";
        throw PhaseUnreliableError(os.str());
      }
      report.phase(i, j) = std::arg(o);
      report.population(i, j) = std::norm(o);
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) report.relative(i, j) = wrap_phase(report.phase(i, j) - report.phase(0, 0));
  return report;
}

StateVector ideal_gate_target(const StateVector& psi0, const QubitFrame& frame, const Eigen::Matrix2d& phases) {
  double residual = 0.0;
  const Eigen::Vector4cd c = frame.coordinates(psi0, &residual);
  if (residual > 1e-3) {
    std::ostringstream os;
    os << "ideal_gate_target: projection residual " << residual << " exceeds 1e-3";
    throw FrameError(os.str());
  }
  DenseVector v = DenseVector::Zero(psi0.dim());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      v += c(2 * i + j) * std::polar(1.0, phases(i, j)) * frame.state(i, j).amplitudes();
  return StateVector::normalized(psi0.space(), std::move(v));
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw ParameterError("GridSpec: at least 2 points per axis");
  if (!(x_max > x_min) || !(y_max > y_min)) throw ParameterError("GridSpec: empty range");
}

double WignerGrid::integral() const {
  const auto weights = [](const std::vector<double>& axis) {
    std::vector<double> w(axis.size(), 0.0);
    for (std::size_t k = 0; k + 1 < axis.size(); ++k) {
      const double h = 0.5 * (axis[k + 1] - axis[k]);
      w[k] += h;
      w[k + 1] += h;
    }
    return w;
  };
  const auto wx = weights(x), wy = weights(y);
  double acc = 0.0;
  for (std::size_t iy = 0; iy < y.size(); ++iy)
    for (std::size_t ix = 0; ix < x.size(); ++ix) acc += wx[ix] * wy[iy] * values(iy, ix);
  return acc;
}

namespace {

// Complex sum over Fock matrix elements; the imaginary part only picks up the
// anti-Hermitian part of rho.
Complex wigner_sum(const DenseMatrix& rho, Complex xi, const std::vector<double>& half_log_fact) {
  const Eigen::Index n = rho.rows();
  const double b = 4.0 * std::norm(xi);
  const double r = 2.0 * std::abs(xi);
  const Complex u = r > 0.0 ? std::polar(1.0, std::arg(xi)) : Complex(1.0, 0.0);
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k > 0 && r == 0.0) break;
    const Complex uk = std::pow(u, static_cast<int>(k));
    const double log_rk = k > 0 ? k * std::log(r) : 0.0;
    double l_prev = 0.0, l_cur = 1.0;  // L_{m-1}^k, L_m^k
    for (Eigen::Index m = 0; m + k < n; ++m) {
      if (m == 1) {
        l_prev = 1.0;
        l_cur = 1.0 + k - b;
      } else if (m > 1) {
        const double next = ((2.0 * (m - 1) + 1.0 + k - b) * l_cur - (m - 1.0 + k) * l_prev) / m;
        l_prev = l_cur;
        l_cur = next;
      }
      const double mag = std::exp(log_rk + half_log_fact[m] - half_log_fact[m + k]);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const Complex c = sign * mag * l_cur * uk;
      if (k == 0) {
        acc += rho(m, m) * c;
      } else {
        acc += rho(m, m + k) * c + rho(m + k, m) * std::conj(c);
      }
    }
  }
  return acc * (2.0 / std::numbers::pi) * std::exp(-0.5 * b);
}

std::vector<double> half_log_factorials(Eigen::Index n) {
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  for (Eigen::Index m = 0; m <= n; ++m) h[m] = 0.5 * std::lgamma(static_cast<double>(m) + 1.0);
  return h;
}

void require_single_mode(const FockSpace& space, const char* what) {
  if (space.n_modes() != 1)
    throw ParameterError(std::string(what) + ": single-mode state required (use reduce_mode first)");
}

}  // namespace

double wigner_point(const DensityMatrix& rho, Complex xi) {
  require_single_mode(rho.space(), "wigner_point");
  return wigner_sum(rho.matrix(), xi, half_log_factorials(rho.dim())).real();
}

double wigner_point_displacement(const DensityMatrix& rho, Complex xi) {
  require_single_mode(rho.space(), "wigner_point_displacement");
  const auto& space = rho.space();
  const DenseMatrix d = displacement_op(space, -xi).matrix();
  const DenseMatrix p = parity_op(space).matrix();
  return (2.0 / std::numbers::pi) * (d * rho.matrix() * d.adjoint() * p).trace().real();
}

WignerGrid wigner(const DensityMatrix& rho, const GridSpec& grid) {
  require_single_mode(rho.space(), "wigner");
  grid.validate();
  WignerGrid out;
  out.x.resize(grid.nx);
  out.y.resize(grid.ny);
  for (int i = 0; i < grid.nx; ++i) out.x[i] = grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1);
  for (int i = 0; i < grid.ny; ++i) out.y[i] = grid.y_min + (grid.y_max - grid.y_min) * i / (grid.ny - 1);
  out.values.resize(grid.ny, grid.nx);
  const auto hlf = half_log_factorials(rho.dim());
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex w = wigner_sum(rho.matrix(), Complex(out.x[ix], out.y[iy]), hlf);
      out.values(iy, ix) = w.real();
      out.imag_residue = std::max(out.imag_residue, std::abs(w.imag()));
    }
  return out;
}

WignerGrid wigner(const StateVector& psi, const GridSpec& grid) { return wigner(DensityMatrix::from_pure(psi), grid); }

DensityMatrix reduce_mode(const DensityMatrix& rho, int keep) {
  const auto& space = rho.space();
  if (space.n_modes() != 2) throw ParameterError("reduce_mode: two-mode state required");
  if (keep != 0 && keep != 1) throw ParameterError("reduce_mode: keep must be 0 or 1");
  const Eigen::Index n = space.n_max();
  DenseMatrix out = DenseMatrix::Zero(n, n);
  const auto& m = rho.matrix();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      Complex acc = 0.0;
      for (Eigen::Index c = 0; c < n; ++c) acc += keep == 0 ? m(a * n + c, b * n + c) : m(c * n + a, c * n + b);
      out(a, b) = acc;
    }
  return {space.single_mode(), std::move(out)};
}

DensityMatrix reduce_mode(const StateVector& psi, int keep) {
  const auto& space = psi.space();
  if (space.n_modes() != 2) throw ParameterError("reduce_mode: two-mode state required");
  if (keep != 0 && keep != 1) throw ParameterError("reduce_mode: keep must be 0 or 1");
  const Eigen::Index n = space.n_max();
  // Column-major map: c(n2, n1) = psi[n1 * n + n2].
  const Eigen::Map<const DenseMatrix> c(psi.amplitudes().data(), n, n);
  DenseMatrix out = keep == 0 ? DenseMatrix(c.transpose() * c.conjugate()) : DenseMatrix(c * c.adjoint());
  return {space.single_mode(), std::move(out)};
}

}  // namespace kposim
