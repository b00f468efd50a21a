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

#include "kposim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kposim/diagnostics.hpp"
#include "kposim/errors.hpp"

namespace kposim {
namespace {

// Largest |e_i| / (tol * (1 + max(|y_i|, |z_i|))).
template <class Y>
double scaled_error(const Y& err, const Y& y, const Y& z, double tol) {
  const auto scale = (y.cwiseAbs().cwiseMax(z.cwiseAbs()).array() + 1.0) * tol;
  return (err.cwiseAbs().array() / scale).maxCoeff();
}

// Fixed-step classical RK4 or adaptive Dormand-Prince 5(4). `rhs(t, y, dy)`
// evaluates dy = f(t, y); `monitor(t, y)` fires at t = 0, every
// `monitor_stride` steps and at t = T; `post_step(y)` runs after each accepted
// step (renormalisation, symmetrisation).
template <class Y, class Rhs, class Monitor, class Post>
StepStats integrate(Y& y, const EvolutionConfig& cfg, Rhs&& rhs, Monitor&& monitor, Post&& post_step) {
  StepStats stats;
  const double T = cfg.duration;
  monitor(0.0, y);

  if (cfg.method == IntegratorMethod::rk4_fixed) {
    const long n = std::max(1L, static_cast<long>(std::ceil(T / cfg.step - 1e-9)));
    const double h = T / static_cast<double>(n);
    stats.step_used = h;
    Y k1, k2, k3, k4, tmp;
    for (long s = 0; s < n; ++s) {
      const double t = static_cast<double>(s) * h;
      rhs(t, y, k1);
      tmp = y + (0.5 * h) * k1;
      rhs(t + 0.5 * h, tmp, k2);
      tmp = y + (0.5 * h) * k2;
      rhs(t + 0.5 * h, tmp, k3);
      tmp = y + h * k3;
      rhs(t + h, tmp, k4);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      stats.rhs_evaluations += 4;
      ++stats.steps;
      post_step(y);
      const double t_next = s + 1 == n ? T : static_cast<double>(s + 1) * h;
      if ((s + 1) % cfg.monitor_stride == 0 || s + 1 == n) monitor(t_next, y);
    }
    return stats;
  }

  // Dormand-Prince 5(4), first-same-as-last.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                   e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  Y k1, k2, k3, k4, k5, k6, k7, tmp, y_new, err;
  double t = 0.0;
  double h = std::min(cfg.step, T);
  rhs(t, y, k1);
  ++stats.rhs_evaluations;
  long accepted = 0;
  while (t < T) {
    bool last = false;
    if (t + h >= T * (1.0 - 1e-14)) {
      h = T - t;
      last = true;
    }
    tmp = y + h * a21 * k1;
    rhs(t + c2 * h, tmp, k2);
    tmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, tmp, k3);
    tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, tmp, k4);
    tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, tmp, k5);
    tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, tmp, k6);
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, y_new, k7);
    stats.rhs_evaluations += 6;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double e = scaled_error(err, y, y_new, cfg.tolerance);
    const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    if (e <= 1.0) {
      t = last ? T : t + h;
      y = y_new;
      k1 = k7;
      post_step(y);
      ++stats.steps;
      ++accepted;
      stats.step_used = h;
      if (accepted % cfg.monitor_stride == 0 || last) monitor(t, y);
      if (last) break;
      h *= factor;
    } else {
      ++stats.rejected;
      h *= std::min(factor, 1.0);
      if (h < 1e-14 * std::max(1.0, T)) throw IntegrationError("adaptive integrator: step size underflow");
    }
  }
  return stats;
}

// Sparse operator stored by diagonals, band b holding H(i, i + offset_b).
// Applying it to a dense matrix is a handful of contiguous column sweeps.
class BandedOperator {
 public:
  explicit BandedOperator(const SparseMatrix& pattern) : d_(pattern.rows()) {
    for (Eigen::Index r = 0; r < pattern.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(pattern, r); it; ++it) {
        const Eigen::Index k = it.col() - it.row();
        auto pos = std::find(offsets_.begin(), offsets_.end(), k);
        if (pos == offsets_.end()) {
          offsets_.push_back(k);
          coef_.push_back(DenseVector::Zero(d_));
          pos = offsets_.end() - 1;
        }
        slots_.emplace_back(static_cast<int>(pos - offsets_.begin()), it.row());
      }
  }

  // `h` must share the pattern passed to the constructor.
  void load(const SparseMatrix& h) {
    const Complex* v = h.valuePtr();
    for (std::size_t s = 0; s < slots_.size(); ++s) coef_[slots_[s].first](slots_[s].second) = v[s];
  }

  std::size_t bands() const noexcept { return offsets_.size(); }
  Eigen::Index offset(std::size_t b) const { return offsets_[b]; }
  const DenseVector& coefficients(std::size_t b) const { return coef_[b]; }

  // out += H * x for a single vector.
  void apply_left(const DenseVector& x, DenseVector& out) const {
    for (std::size_t b = 0; b < offsets_.size(); ++b) {
      const Eigen::Index k = offsets_[b];
      if (k >= 0) {
        out.head(d_ - k).array() += coef_[b].head(d_ - k).array() * x.segment(k, d_ - k).array();
      } else {
        out.tail(d_ + k).array() += coef_[b].tail(d_ + k).array() * x.head(d_ + k).array();
      }
    }
  }

 private:
  Eigen::Index d_;
  std::vector<Eigen::Index> offsets_;
  std::vector<DenseVector> coef_;
  std::vector<std::pair<int, Eigen::Index>> slots_;
};

std::vector<std::vector<double>> occupations(const FockSpace& space) {
  std::vector<std::vector<double>> occ(space.n_modes(), std::vector<double>(space.dim()));
  for (int m = 0; m < space.n_modes(); ++m)
    for (Eigen::Index i = 0; i < space.dim(); ++i) occ[m][i] = space.occupation(i, m);
  return occ;
}

void check_dims(const TimeDependentHamiltonian& h, const FockSpace& space) {
  if (!(h.space() == space)) throw ParameterError("evolve: Hamiltonian and state live on different spaces");
}

}  // namespace

void EvolutionConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ParameterError("EvolutionConfig: duration must be > 0");
  if (!(step > 0.0)) throw ParameterError("EvolutionConfig: step must be > 0");
  if (method == IntegratorMethod::rk_adaptive && (tolerance < 1e-14 || tolerance > 1e-6))
    throw ParameterError("EvolutionConfig: adaptive tolerance must lie in [1e-14, 1e-6]");
  if (monitor_stride < 1) throw ParameterError("EvolutionConfig: monitor_stride must be >= 1");
}

bool DissipationRates::any() const {
  return kappa[0] > 0.0 || kappa[1] > 0.0 || gamma_p[0] > 0.0 || gamma_p[1] > 0.0;
}

PureRecord schrodinger_evolve(const TimeDependentHamiltonian& h, const StateVector& psi0,
                              const EvolutionConfig& config) {
  config.validate();
  check_dims(h, psi0.space());
  const FockSpace space = psi0.space();
  const auto occ = occupations(space);

  SparseMatrix H;
  DenseVector psi = psi0.amplitudes();
  std::vector<Sample> samples;
  double max_drift = 0.0;

  auto rhs = [&](double t, const DenseVector& y, DenseVector& dy) {
    h.assemble(t, H);
    dy.noalias() = H * y;
    dy *= Complex(0.0, -1.0);
  };
  auto monitor = [&](double t, const DenseVector& y) {
    Sample s;
    s.t = t;
    s.norm = y.norm();
    h.assemble(t, H);
    s.energy = y.dot(H * y).real();
    for (const auto& n : occ) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) acc += n[i] * std::norm(y(i));
      s.photons.push_back(acc);
    }
    max_drift = std::max(max_drift, std::abs(s.norm - 1.0));
    if (max_drift > kNormDriftLimit) {
      std::ostringstream os;
      os << "schrodinger_evolve: norm drift " << max_drift << " at t = " << t
         << " exceeds 1e-6; reduce the step size";
      throw IntegrationError(os.str());
    }
    samples.push_back(std::move(s));
  };
  auto post = [&](DenseVector& y) {
    if (config.renormalize) y.normalize();
  };

  StepStats stats = integrate(psi, config, rhs, monitor, post);
  stats.max_norm_drift = max_drift;
  return {StateVector(space, std::move(psi)), std::move(samples), stats};
}

MixedRecord lindblad_evolve(const TimeDependentHamiltonian& h, const DissipationRates& rates,
                            const DensityMatrix& rho0, const EvolutionConfig& config) {
  config.validate();
  check_dims(h, rho0.space());
  const FockSpace space = rho0.space();
  const Eigen::Index d = space.dim();
  const auto occ = occupations(space);
  const double deph_scale = config.dephasing == DephasingForm::unit_weight ? 1.0 : 0.5;

  // Diagonal part of the dissipator: -sum_l [kappa/2 (n_i + n_j) + c gamma (n_i - n_j)^2].
  Eigen::MatrixXd damping = Eigen::MatrixXd::Zero(d, d);
  struct Jump {
    double kappa;
    Eigen::Index offset;   // index shift of n_l -> n_l + 1
    Eigen::VectorXd weight;  // sqrt(n_l + 1), zero at the cutoff
  };
  std::vector<Jump> jumps;
  for (int l = 0; l < space.n_modes(); ++l) {
    const double kappa = rates.kappa[l];
    const double gamma = rates.gamma_p[l] * deph_scale;
    if (kappa == 0.0 && gamma == 0.0) continue;
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        const double ni = occ[l][i], nj = occ[l][j];
        damping(i, j) -= 0.5 * kappa * (ni + nj) + gamma * (ni - nj) * (ni - nj);
      }
    if (kappa > 0.0) {
      Jump jump{kappa, (space.n_modes() == 2 && l == 0) ? space.n_max() : 1, Eigen::VectorXd::Zero(d)};
      for (Eigen::Index i = 0; i < d; ++i) {
        const int n = space.occupation(i, l);
        if (n + 1 < space.n_max()) jump.weight(i) = std::sqrt(n + 1.0);
      }
      jumps.push_back(std::move(jump));
    }
  }
  const bool dissipative = rates.any();

  SparseMatrix H;
  h.assemble(0.0, H);
  BandedOperator bands(H);
  DenseMatrix X(d, d);
  DenseVector hy(d);
  DenseMatrix rho = rho0.matrix();
  std::vector<Sample> samples;
  double max_drift = 0.0;

  // One sweep over columns: column c of H rho uses column c of rho, column c
  // of rho H uses columns c - k of rho, so the working set stays in cache.
  // The derivative is Hermitian, so only rows 0..c are computed and the lower
  // triangle is mirrored.
  auto rhs = [&](double t, const DenseMatrix& y, DenseMatrix& dy) {
    h.assemble(t, H);
    bands.load(H);
    dy.resize(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
      const Eigen::Index rows = c + 1;
      auto acc = hy.head(rows);
      acc.setZero();
      for (std::size_t b = 0; b < bands.bands(); ++b) {
        const Eigen::Index k = bands.offset(b);
        const auto& coef = bands.coefficients(b);
        // (H rho)(i, c) += H(i, i + k) rho(i + k, c)
        const Eigen::Index lo = std::max<Eigen::Index>(0, -k);
        const Eigen::Index hi = std::min(rows, d - k);
        if (hi > lo) acc.segment(lo, hi - lo).array() += coef.segment(lo, hi - lo).array() * y.col(c).segment(lo + k, hi - lo).array();
        // (rho H)(i, c) += rho(i, c - k) H(c - k, c)
        const Eigen::Index j = c - k;
        if (j >= 0 && j < d) acc -= coef(j) * y.col(j).head(rows);
      }
      auto dc = dy.col(c).head(rows);
      dc = Complex(0.0, -1.0) * acc;
      if (dissipative) {
        dc.array() += damping.col(c).head(rows).array() * y.col(c).head(rows).array();
        for (const auto& jump : jumps) {
          const Eigen::Index o = jump.offset;
          const double wc = c + o < d ? jump.weight(c) : 0.0;
          if (wc == 0.0) continue;
          const Eigen::Index len = std::min(rows, d - o);
          dc.head(len).array() += (jump.kappa * wc) * jump.weight.head(len).array() * y.col(c + o).segment(o, len).array();
        }
      }
      for (Eigen::Index i = 0; i < c; ++i) dy(c, i) = std::conj(dy(i, c));
      dy(c, c) = dy(c, c).real();
    }
  };
  auto monitor = [&](double t, const DenseMatrix& y) {
    Sample s;
    s.t = t;
    s.norm = y.trace().real();
    h.assemble(t, H);
    X.noalias() = H * y;
    s.energy = X.trace().real();
    for (const auto& n : occ) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) acc += n[i] * y(i, i).real();
      s.photons.push_back(acc);
    }
    max_drift = std::max(max_drift, std::abs(s.norm - 1.0));
    if (max_drift > kNormDriftLimit) {
      std::ostringstream os;
      os << "lindblad_evolve: trace drift " << max_drift << " at t = " << t
         << " exceeds 1e-6; reduce the step size";
      throw IntegrationError(os.str());
    }
    samples.push_back(std::move(s));
  };
  long counter = 0;
  auto post = [&](DenseMatrix& y) {
    if (++counter % config.monitor_stride == 0) y = 0.5 * (y + y.adjoint()).eval();
    if (config.renormalize) y /= y.trace().real();
  };

  StepStats stats = integrate(rho, config, rhs, monitor, post);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  stats.max_norm_drift = max_drift;
  DensityMatrix out(space, std::move(rho));
  stats.min_eigenvalue = out.min_eigenvalue();
  if (stats.min_eigenvalue < -1e-6) {
    std::ostringstream os;
    os << "lindblad_evolve: density matrix lost positivity (min eigenvalue " << stats.min_eigenvalue << ")";
    throw IntegrationError(os.str());
  }
  return {std::move(out), std::move(samples), stats};
}

namespace {

double clamp_fidelity(double f) {
  if (f < -1e-9 || f > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "fidelity " << f << " clamped to [0, 1]";
    diagnostics::warn(os.str());
  }
  return std::clamp(f, 0.0, 1.0);
}

}  // namespace

double fidelity(const StateVector& state, const StateVector& target) {
  if (!(state.space() == target.space())) throw ParameterError("fidelity: dimension mismatch");
  return clamp_fidelity(std::norm(target.inner(state)));
}

double fidelity(const DensityMatrix& state, const StateVector& target) {
  if (!(state.space() == target.space())) throw ParameterError("fidelity: dimension mismatch");
  const auto& v = target.amplitudes();
  return clamp_fidelity(v.dot(state.matrix() * v).real());
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.space() == b.space())) throw ParameterError("trace_distance: dimension mismatch");
  const DenseMatrix diff = a.matrix() - b.matrix();
  const DenseMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace kposim
