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
#include "kposim/exp/experiments.hpp"

namespace kposim::exp {

struct SweepRow {
  GridPoint point;
  PointResult result;
  double wall_seconds = 0.0;  // manifest only, never written to the CSV

  bool failed() const { return !result.error.empty(); }
};

struct SweepResult {
  std::string experiment;
  std::vector<std::string> axes;
  std::vector<std::string> metrics;
  std::vector<SweepRow> rows;  // sorted by grid index
  double wall_seconds = 0.0;
  long warnings = 0;

  std::size_t failures() const;
};

/// Evaluates every grid point on `workers` threads. Points are independent
/// and results are merged by grid index, so the output does not depend on
/// the worker count. Exceptions from a point are recorded on its row.
SweepResult run_sweep(const ExperimentConfig& config, int workers);

// Runs one point, converting library errors into an error code on the row.
PointResult evaluate_point(const ExperimentDef& def, const ExperimentConfig& config, const GridPoint& point);

}  // namespace kposim::exp
