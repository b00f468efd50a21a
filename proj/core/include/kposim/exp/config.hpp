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

#include <optional>
#include <string>
#include <vector>

#include "kposim/analysis.hpp"
#include "kposim/dynamics.hpp"
#include "kposim/hamiltonians.hpp"

namespace kposim::exp {

inline constexpr int kSchemaVersion = 1;

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

// Experiment-specific knobs. Unused fields are ignored by experiments that do
// not read them.
struct ExperimentOptions {
  double theta_amp = 0.1;
  // When set, theta_amp is calibrated per grid point so that
  // phi_10 - phi_00 reaches this value (radians).
  std::optional<double> target_phase;
  // Also evolve the four basis states: phases, leakage and basis-averaged fidelity.
  bool basis_states = false;
  double p_max = 4.0;
  double rotation_duration = 0.6;
  // Energy window (units of K) defining the ground manifold in loading runs.
  double ground_window = 1e-2;
  GridSpec wigner_grid;
};

/// Full description of one run. All rates and times are in units where K = 1.
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string experiment;
  KpoSystemParams params;
  std::vector<GridAxis> grid;  // order fixed by the experiment definition
  ExperimentOptions options;
  EvolutionConfig evolution;
  std::string out_dir = "out";
  int workers = 1;
  bool audit = false;
  bool strict_truncation = false;

  const GridAxis& axis(const std::string& name) const;
  std::size_t grid_size() const;
  TruncationPolicy truncation() const {
    return strict_truncation ? TruncationPolicy::strict : TruncationPolicy::warn;
  }
};

/// Experiment defaults overlaid with the JSON document `text`. Unknown keys,
/// unknown axes, empty or non-finite grids and bad types raise ConfigError.
/// If `experiment` is empty the document must name it.
ExperimentConfig parse_config(const std::string& text, const std::string& experiment = "");
ExperimentConfig load_config(const std::string& path, const std::string& experiment = "");

// Throws ConfigError on any violated invariant.
void validate(const ExperimentConfig& config);

// Canonical JSON echo (sorted keys, full precision) used in manifests.
std::string to_json(const ExperimentConfig& config, int indent = 2);

std::string to_string(IntegratorMethod method);
std::string to_string(DephasingForm form);

}  // namespace kposim::exp
