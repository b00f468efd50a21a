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

#include "kposim/exp/audit.hpp"
#include "kposim/exp/config.hpp"
#include "kposim/exp/sweep.hpp"

namespace kposim::exp {

inline constexpr int kCsvSchemaVersion = 1;

// Column order: grid axes, status, error, metrics. Numbers use %.17g, missing
// metrics are empty fields. Deterministic for a given config.
std::string format_csv(const SweepResult& result);

std::string format_wigner_csv(const WignerGrid& grid);

std::string format_manifest(const ExperimentConfig& config, const SweepResult& result,
                            const std::optional<AuditReport>& audit);

struct OutputPaths {
  std::string csv;
  std::string manifest;
  std::vector<std::string> wigner;
};

// Creates `config.out_dir` and writes <experiment>.csv, <experiment>.manifest.json
// and wigner_<label>.csv for every snapshot.
OutputPaths write_outputs(const ExperimentConfig& config, const SweepResult& result,
                          const std::optional<AuditReport>& audit);

}  // namespace kposim::exp
