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

#include "kposim/exp/audit.hpp"

#include <algorithm>
#include <cmath>

#include "kposim/errors.hpp"

namespace kposim::exp {
namespace {

void compare(const SweepRow& base, const PointResult& refined, const std::string& refinement, AuditReport& report) {
  if (!refined.error.empty()) {
    report.flags.push_back({base.point.index, "error:" + refined.error, 0.0, 0.0, refinement});
    return;
  }
  for (const auto& [name, v0] : base.result.metrics) {
    double tol = 0.0;
    if (name == "fidelity" || name == "basis_fidelity_mean") tol = kAuditFidelityTol;
    else if (name.rfind("phase_rel_", 0) == 0) tol = kAuditPhaseTol;
    else continue;
    auto it = refined.metrics.find(name);
    if (it == refined.metrics.end()) continue;
    double d = std::abs(it->second - v0);
    if (name.rfind("phase_rel_", 0) == 0) d = std::abs(wrap_phase(it->second - v0));
    if (d > tol) report.flags.push_back({base.point.index, name, v0, it->second, refinement});
  }
}

}  // namespace

AuditReport convergence_audit(const ExperimentConfig& config, const SweepResult& baseline) {
  const ExperimentDef& def = find_experiment(config.experiment);
  AuditReport report;
  if (baseline.rows.empty()) return report;

  ExperimentConfig wide = config;
  wide.params.n_max = 2 * config.params.n_max;
  ExperimentConfig fine = config;
  if (config.evolution.method == IntegratorMethod::rk4_fixed) {
    fine.evolution.step = config.evolution.step / 2;
    report.refined_step = fine.evolution.step;
  } else {
    fine.evolution.tolerance = std::max(config.evolution.tolerance / 32, 1e-14);
    report.refined_step = fine.evolution.tolerance;
  }
  report.refined_n_max = wide.params.n_max;

  std::vector<std::size_t> picks{0};
  if (baseline.rows.size() > 1) picks.push_back(baseline.rows.size() - 1);
  for (std::size_t i : picks) {
    const SweepRow& row = baseline.rows[i];
    if (row.failed()) continue;
    report.audited_points.push_back(row.point.index);
    compare(row, evaluate_point(def, wide, row.point), "n_max", report);
    compare(row, evaluate_point(def, fine, row.point), "step", report);
  }
  return report;
}

}  // namespace kposim::exp
