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

#include "kposim/spectrum.hpp"

#include <cmath>

#include "kposim/errors.hpp"

namespace kposim {
namespace {

Eigen::SelfAdjointEigenSolver<DenseMatrix> solve(const OperatorMatrix& h) {
  if (!h.is_hermitian(1e-10)) throw ParameterError("spectrum: operator is not Hermitian");
  return Eigen::SelfAdjointEigenSolver<DenseMatrix>(0.5 * (h.matrix() + h.matrix().adjoint()));
}

}  // namespace

GroundState ground_state(const OperatorMatrix& h, double degeneracy_tol) {
  const auto es = solve(h);
  const auto& e = es.eigenvalues();
  GroundState gs;
  gs.energy = e(0);
  gs.gap = e.size() > 1 ? e(1) - e(0) : 0.0;
  gs.states.emplace_back(h.space(), es.eigenvectors().col(0));
  if (e.size() > 1 && gs.gap < degeneracy_tol) gs.states.emplace_back(h.space(), es.eigenvectors().col(1));
  return gs;
}

std::vector<StateVector> low_energy_manifold(const OperatorMatrix& h, double window) {
  const auto es = solve(h);
  const auto& e = es.eigenvalues();
  std::vector<StateVector> out;
  for (Eigen::Index k = 0; k < e.size() && e(k) - e(0) <= window; ++k)
    out.emplace_back(h.space(), es.eigenvectors().col(k));
  return out;
}

double manifold_population(const StateVector& psi, const std::vector<StateVector>& manifold) {
  double acc = 0.0;
  for (const auto& v : manifold) acc += std::norm(v.inner(psi));
  return acc;
}

StateVector parity_ground_state(const OperatorMatrix& h, Parity parity) {
  const auto& space = h.space();
  const int want = parity == Parity::even ? 0 : 1;
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < space.dim(); ++i) {
    int total = 0;
    for (int m = 0; m < space.n_modes(); ++m) total += space.occupation(i, m);
    if (total % 2 == want) idx.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(idx.size());
  DenseMatrix sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) sub(r, c) = h.matrix()(idx[r], idx[c]);
  if ((sub - sub.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, sub.cwiseAbs().maxCoeff()))
    throw ParameterError("parity_ground_state: operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(sub);
  DenseVector v = DenseVector::Zero(space.dim());
  for (Eigen::Index r = 0; r < k; ++r) v(idx[r]) = es.eigenvectors()(r, 0);
  return StateVector(space, std::move(v));
}

}  // namespace kposim
