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

#include <string>
#include <vector>

#include "kposim/exp/config.hpp"
#include "kposim/exp/sweep.hpp"

namespace kposim::exp {

struct AuditFlag {
  std::size_t grid_index = 0;
  std::string metric;
  double baseline = 0.0;
  double refined = 0.0;
  std::string refinement;  // "n_max" or "step"
};

struct AuditReport {
  std::vector<std::size_t> audited_points;
  std::vector<AuditFlag> flags;
  int refined_n_max = 0;
  double refined_step = 0.0;

  bool clean() const { return flags.empty(); }
};

inline constexpr double kAuditFidelityTol = 1e-6;
inline constexpr double kAuditPhaseTol = 1e-4;

/// Re-runs the first and last grid points twice, once with n_max doubled and
/// once with the step halved, and flags fidelity shifts above 1e-6 and phase
/// shifts above 1e-4 rad. `baseline` supplies the original rows.
AuditReport convergence_audit(const ExperimentConfig& config, const SweepResult& baseline);

}  // namespace kposim::exp
