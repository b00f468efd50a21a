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
#include <complex>

#include "kposim/errors.hpp"
#include "kposim/fock.hpp"

using namespace kposim;

namespace {

// <n|alpha> from the Poisson series, accumulated without factorials.
std::vector<Complex> poisson_amplitudes(Complex alpha, int n) {
  std::vector<Complex> c(n);
  c[0] = std::exp(-std::norm(alpha) / 2);
  for (int k = 1; k < n; ++k) c[k] = c[k - 1] * alpha / std::sqrt(static_cast<double>(k));
  return c;
}

}  // namespace

TEST(Fock, CommutatorIsIdentityExceptLastLevel) {
  const FockSpace s(12);
  const auto a = annihilation_op(s);
  const auto ad = creation_op(s);
  const DenseMatrix c = (a * ad - ad * a).matrix();
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const double want = i != j ? 0.0 : (i == 11 ? -11.0 : 1.0);
      EXPECT_NEAR(std::abs(c(i, j) - want), 0.0, 1e-12) << i << "," << j;
    }
}

TEST(Fock, NumberOperatorDiagonal) {
  const FockSpace s(9);
  const auto n = number_op(s).matrix();
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(n(i, i).real(), i, 1e-14);
  EXPECT_NEAR((n - n.diagonal().asDiagonal().toDenseMatrix()).norm(), 0.0, 1e-14);
}

TEST(Fock, TwoModeEmbeddingMatchesIndexArithmetic) {
  const int n = 6;
  const FockSpace s(n, 2);
  const DenseMatrix got = (annihilation_op(s, 0) * creation_op(s, 1)).matrix();
  DenseMatrix want = DenseMatrix::Zero(n * n, n * n);
  // a1 a2^dag |n1, n2> = sqrt(n1) sqrt(n2 + 1) |n1 - 1, n2 + 1>
  for (int n1 = 1; n1 < n; ++n1)
    for (int n2 = 0; n2 + 1 < n; ++n2)
      want((n1 - 1) * n + n2 + 1, n1 * n + n2) = std::sqrt(double(n1)) * std::sqrt(double(n2 + 1));
  EXPECT_LT((got - want).norm(), 1e-12);

  const auto single = FockSpace(n);
  const DenseMatrix kron = tensor(annihilation_op(single), OperatorMatrix::identity(single)).matrix() *
                           tensor(OperatorMatrix::identity(single), creation_op(single)).matrix();
  EXPECT_LT((kron - want).norm(), 1e-12);
}

TEST(Fock, CoherentAmplitudesMatchPoissonSeries) {
  const Complex alpha(1.1, -0.7);
  const FockSpace s(30);
  const auto psi = coherent_state(s, alpha);
  const auto ref = poisson_amplitudes(alpha, 30);
  double norm = 0.0;
  for (auto c : ref) norm += std::norm(c);
  for (int k = 0; k < 30; ++k) EXPECT_NEAR(std::abs(psi.amplitudes()(k) - ref[k] / std::sqrt(norm)), 0.0, 1e-13);
}

TEST(Fock, CoherentOverlapLaw) {
  const double a = std::sqrt(7.0);
  const FockSpace s(30);
  const auto plus = coherent_state(s, Complex(a, 0));
  const auto minus = coherent_state(s, Complex(-a, 0));
  // |<beta|alpha>| = exp(-|alpha - beta|^2 / 2)
  const double want = std::exp(-14.0);
  EXPECT_NEAR(std::abs(minus.inner(plus)) / want, 1.0, 1e-4);
  EXPECT_NEAR(want, 8.315e-7, 1e-9);

  const Complex b(0.4, 1.3), c(-0.2, 0.5);
  const double want2 = std::exp(-std::norm(b - c) / 2);
  EXPECT_NEAR(std::abs(coherent_state(s, b).inner(coherent_state(s, c))), want2, 1e-10);
}

TEST(Fock, CoherentMeanPhotonNumber) {
  const FockSpace s(30);
  const auto psi = coherent_state(s, Complex(std::sqrt(7.0), 0));
  double mean = 0.0;
  for (int k = 0; k < 30; ++k) mean += k * std::norm(psi.amplitudes()(k));
  EXPECT_NEAR(mean, 7.0, 1e-6);
  EXPECT_NEAR(psi.expectation(number_op(s)).real(), 7.0, 1e-6);
}

TEST(Fock, CatParityAndNorm) {
  const FockSpace s(30);
  const Complex a(std::sqrt(7.0), 0);
  const auto even = cat_state(s, a, Parity::even);
  const auto odd = cat_state(s, a, Parity::odd);
  EXPECT_NEAR(even.norm(), 1.0, 1e-12);
  EXPECT_NEAR(odd.norm(), 1.0, 1e-12);
  EXPECT_NEAR(even.expectation(parity_op(s)).real(), 1.0, 1e-12);
  EXPECT_NEAR(odd.expectation(parity_op(s)).real(), -1.0, 1e-12);
  EXPECT_NEAR(std::abs(even.inner(odd)), 0.0, 1e-12);
}

TEST(Fock, DisplacementOfVacuumIsCoherentState) {
  const FockSpace s(30);
  const Complex xi(1.0, 0.5);
  const DenseVector d0 = displacement_op(s, xi).matrix() * fock_state(s, 0).amplitudes();
  const StateVector got(s, d0);
  const auto ref = coherent_state(s, xi);
  EXPECT_GT(std::norm(ref.inner(got)), 1.0 - 1e-8);
}

TEST(Fock, DisplacementIsUnitary) {
  const FockSpace s(20);
  const DenseMatrix d = displacement_op(s, Complex(0.6, -0.3)).matrix();
  EXPECT_LT((d.adjoint() * d - DenseMatrix::Identity(20, 20)).norm(), 1e-10);
}

TEST(Fock, RotationMovesCoherentState) {
  const FockSpace s(30);
  const Complex a(2.0, 0.0);
  const double th = 0.7;
  const auto rotated = rotate(coherent_state(s, a), th);
  const auto ref = coherent_state(s, a * std::polar(1.0, th));
  EXPECT_GT(std::norm(ref.inner(rotated)), 1.0 - 1e-12);
}

TEST(Fock, TailWeightAndStrictTruncation) {
  EXPECT_LT(coherent_tail_weight(30, Complex(std::sqrt(7.0), 0)), 1e-8);
  EXPECT_GT(coherent_tail_weight(8, Complex(std::sqrt(7.0), 0)), 1e-3);
  EXPECT_THROW(coherent_state(FockSpace(8), Complex(std::sqrt(7.0), 0), TruncationPolicy::strict), TruncationError);
  EXPECT_NO_THROW(coherent_state(FockSpace(8), Complex(std::sqrt(7.0), 0), TruncationPolicy::warn));
}

TEST(Fock, DensityMatrixChecks) {
  const FockSpace s(5);
  const auto rho = DensityMatrix::from_pure(fock_state(s, 2));
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
  EXPECT_NO_THROW(rho.validate());
  const auto mixed = DensityMatrix::maximally_mixed(s);
  EXPECT_NEAR(mixed.purity(), 0.2, 1e-14);
  DenseMatrix bad = DenseMatrix::Zero(5, 5);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(s, bad).validate(), ParameterError);
}

TEST(Fock, InvalidArgumentsThrow) {
  EXPECT_THROW(FockSpace(0), ParameterError);
  EXPECT_THROW(FockSpace(4, 3), ParameterError);
  EXPECT_THROW(annihilation_op(FockSpace(4), 1), ParameterError);
  EXPECT_THROW(fock_state(FockSpace(4), 4), ParameterError);
}
