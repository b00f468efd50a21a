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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kposim/errors.hpp"
#include "kposim/hamiltonians.hpp"
#include "kposim/spectrum.hpp"

using namespace kposim;
using std::numbers::pi;

namespace {

// Single-mode KPO built entrywise from <m|H|n>.
DenseMatrix kpo_entrywise(int n, double K, double p, double theta, double detuning) {
  DenseMatrix h = DenseMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = 0.5 * K * k * (k - 1) + detuning * k;
  for (int k = 0; k + 2 < n; ++k) {
    const double amp = std::sqrt(double(k + 1) * (k + 2));
    h(k + 2, k) = -0.5 * p * amp * std::polar(1.0, 2 * theta);
    h(k, k + 2) = std::conj(h(k + 2, k));
  }
  return h;
}

}  // namespace

TEST(Hamiltonians, KpoMatchesEntrywiseConstruction) {
  KpoSystemParams p;
  p.n_max = 16;
  const DenseMatrix got = kpo_hamiltonian(p, 0.37, 0.2).matrix();
  EXPECT_LT((got - kpo_entrywise(16, 1.0, 7.0, 0.37, 0.2)).norm(), 1e-12);
}

TEST(Hamiltonians, RotationCovariance) {
  KpoSystemParams p;
  const FockSpace s(p.n_max);
  const double th = pi / 4;
  DenseMatrix u = DenseMatrix::Zero(s.dim(), s.dim());
  for (int k = 0; k < s.dim(); ++k) u(k, k) = std::polar(1.0, th * k);
  const DenseMatrix lhs = kpo_hamiltonian(p, th).matrix();
  const DenseMatrix rhs = u * kpo_hamiltonian(p, 0.0).matrix() * u.adjoint();
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Hamiltonians, GroundSpaceIsSpannedByCats) {
  KpoSystemParams p;
  const auto h = kpo_hamiltonian(p, 0.0);
  const FockSpace s(p.n_max);
  const auto even = cat_state(s, Complex(std::sqrt(7.0), 0), Parity::even);
  const auto odd = cat_state(s, Complex(std::sqrt(7.0), 0), Parity::odd);
  const auto manifold = low_energy_manifold(h, 1e-3);
  ASSERT_EQ(manifold.size(), 2u);
  EXPECT_GT(manifold_population(even, manifold), 0.99);
  EXPECT_GT(manifold_population(odd, manifold), 0.99);
  EXPECT_GT(std::norm(parity_ground_state(h, Parity::even).inner(even)), 0.99);

  const auto gs = ground_state(h, 1e-12);
  EXPECT_LT(gs.gap, 1e-4);
}

TEST(Hamiltonians, HermitianAtAllTimes) {
  KpoSystemParams p;
  p.n_max = 10;
  p.xi_cd = 0.8;
  p.delta_prime = 0.05;
  const auto g = Schedule::gate_phase(1.0, 0.12);
  const auto h2 = two_kpo_hamiltonian(p, g, 0.0);
  const auto bs = beam_splitter_hamiltonian(p, g);
  const auto [pump, det] = loading_schedules(1.0, 4.0, 3.0);
  const auto ld = loading_hamiltonian(p, pump, det, pi / 2, 0.0);
  for (double t : {0.0, 0.13, 0.5, 0.81, 1.0}) {
    EXPECT_TRUE(h2.at(t).is_hermitian(1e-14)) << t;
    EXPECT_TRUE(bs.at(t).is_hermitian(1e-14)) << t;
    EXPECT_TRUE(ld.at(t).is_hermitian(1e-14)) << t;
  }
}

TEST(Hamiltonians, CdTermCoefficient) {
  KpoSystemParams p;
  p.n_max = 12;
  const auto r = Schedule::rotation(0.6);
  const auto h = cd_modified_hamiltonian(p, r);
  const double th = r.value(0.3);
  const DenseMatrix extra = h.at(0.3).matrix() - kpo_hamiltonian(p, th).matrix();
  // Only -theta_dot * n remains.
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(extra(k, k).real(), -r.derivative(0.3) * k, 1e-10);
  EXPECT_NEAR(-r.derivative(0.3), -4.112, 1e-3);
  EXPECT_LT((extra - DenseMatrix(extra.diagonal().asDiagonal())).norm(), 1e-12);
}

TEST(Hamiltonians, CouplingEnergyShift) {
  KpoSystemParams p;
  const FockSpace s(p.n_max, 2);
  const double a = std::sqrt(7.0);
  const OperatorMatrix coupling = p.J * (annihilation_op(s, 0) * creation_op(s, 1) +
                                         creation_op(s, 0) * annihilation_op(s, 1));
  const auto one = FockSpace(p.n_max);
  auto diag = [&](double theta) {
    const auto st = tensor(coherent_state(one, std::polar(a, theta)), coherent_state(one, Complex(a, 0)));
    return st.expectation(coupling).real();
  };
  EXPECT_NEAR(diag(0.0), 2 * 0.2 * 7.0, 0.02 * 2.8);
  EXPECT_NEAR(diag(pi / 2), 0.0, 1e-6);
  EXPECT_NEAR(diag(pi / 3), 2.8 * std::cos(pi / 3), 1e-6);
}

TEST(Hamiltonians, BeamSplitterCouplingFollowsSchedule) {
  KpoSystemParams p;
  p.n_max = 6;
  const auto g = Schedule::gate_phase(1.0, 0.1);
  const auto h = beam_splitter_hamiltonian(p, g);
  // <1,0| H |0,1> = g(t)
  const int n = p.n_max;
  EXPECT_NEAR(h.at(0.5)(1 * n + 0, 0 * n + 1).real(), 0.2 * std::cos(g.value(0.5)), 1e-12);
  EXPECT_NEAR(std::cos(g.value(0.5)), 0.5878, 1e-4);
}

TEST(Hamiltonians, EffectivePotentialClosedFormVsNumeric) {
  KpoSystemParams p;
  const Complex a = std::polar(1.2, 0.3);
  EXPECT_NEAR(effective_potential(p, a, pi / 5), effective_potential_numeric(p, a, pi / 5), 1e-6);
}

TEST(Hamiltonians, ParameterValidation) {
  KpoSystemParams p;
  p.r = 0.0;
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.kappa = {-1e-3, 0.0};
  EXPECT_THROW(p.validate(), ParameterError);
  p = {};
  p.n_max = 1;
  EXPECT_THROW(p.validate(), ParameterError);
}
