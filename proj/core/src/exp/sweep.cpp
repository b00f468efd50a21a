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

#include "kposim/exp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "kposim/diagnostics.hpp"
#include "kposim/errors.hpp"

namespace kposim::exp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

PointResult failure(std::string code, const std::exception& e) {
  PointResult r;
  r.error = std::move(code);
  r.message = e.what();
  return r;
}

}  // namespace

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed(); }));
}

PointResult evaluate_point(const ExperimentDef& def, const ExperimentConfig& config, const GridPoint& point) {
  try {
    return def.run_point(config, point);
  } catch (const CalibrationError& e) {
    return failure("calibration", e);
  } catch (const IntegrationError& e) {
    return failure("integration", e);
  } catch (const PhaseUnreliableError& e) {
    return failure("phase_unreliable", e);
  } catch (const FrameError& e) {
    return failure("frame", e);
  } catch (const TruncationError& e) {
    return failure("truncation", e);
  } catch (const DegenerateStateError& e) {
    return failure("degenerate", e);
  } catch (const ParameterError& e) {
    return failure("parameter", e);
  } catch (const std::exception& e) {
    return failure("internal", e);
  }
}

SweepResult run_sweep(const ExperimentConfig& config, int workers) {
  validate(config);
  const ExperimentDef& def = find_experiment(config.experiment);
  const std::vector<GridPoint> points = expand_grid(config);

  SweepResult out;
  out.experiment = config.experiment;
  for (const auto& a : config.grid) out.axes.push_back(a.name);
  out.metrics = def.metrics;
  out.rows.resize(points.size());

  const long warnings0 = diagnostics::warning_count();
  const auto t0 = Clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const auto ti = Clock::now();
      SweepRow& row = out.rows[i];
      row.point = points[i];
      row.result = evaluate_point(def, config, points[i]);
      row.wall_seconds = seconds_since(ti);
    }
  };

  const int n = std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(points.size(), 1)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  out.wall_seconds = seconds_since(t0);
  out.warnings = diagnostics::warning_count() - warnings0;
  return out;
}

}  // namespace kposim::exp
