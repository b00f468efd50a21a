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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kposim/analysis.hpp"
#include "kposim/exp/config.hpp"

namespace kposim::exp {

struct GridPoint {
  std::size_t index = 0;
  std::vector<std::string> names;
  std::vector<double> values;

  double get(const std::string& name) const;
};

struct WignerSnapshot {
  std::string label;
  WignerGrid grid;
};

// Outcome of one grid point. `error` is empty on success, otherwise a short
// code (calibration, integration, phase_unreliable, frame, truncation,
// parameter) and `message` carries the detail.
struct PointResult {
  std::map<std::string, double> metrics;
  std::string error;
  std::string message;
  std::vector<WignerSnapshot> snapshots;
};

using PointFunction = std::function<PointResult(const ExperimentConfig&, const GridPoint&)>;

struct ExperimentDef {
  std::string name;
  std::string figure;       // which plot the experiment reproduces
  std::string description;
  std::vector<std::string> metrics;  // CSV metric columns, in order
  std::function<ExperimentConfig()> defaults;
  PointFunction run_point;
};

const std::vector<ExperimentDef>& registry();
// Throws ConfigError for unknown names.
const ExperimentDef& find_experiment(const std::string& name);

// Cartesian product of the configured axes; the last axis varies fastest.
std::vector<GridPoint> expand_grid(const ExperimentConfig& config);

}  // namespace kposim::exp
