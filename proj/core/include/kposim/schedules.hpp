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
#include <utility>

namespace kposim {

struct KpoSystemParams;

enum class ScheduleKind { gate_phase, rotation, pump_ramp, detuning_ramp, constant };

std::string to_string(ScheduleKind kind);

/// Control waveform on [0, T] with an analytic derivative. Time is in units
/// of 1/K and angles in radians.
///
///   gate_phase     theta(t) = pi/2 - A pi (1 - cos(2 pi t / T)),   A = theta_amp
///   rotation       theta(t) = (pi/4)(1 - cos(pi t / T))
///   pump_ramp      p(t)     = A (1 - cos(pi t / T)) / 2,           A = p_max
///   detuning_ramp  D(t)     = A (1 + cos(pi t / T)) / 2,           A = Delta_max
///   constant       c(t)     = A
class Schedule {
 public:
  static Schedule gate_phase(double duration, double theta_amp);
  static Schedule rotation(double duration);
  static Schedule pump_ramp(double duration, double p_max);
  static Schedule detuning_ramp(double duration, double delta_max);
  static Schedule constant(double value, double duration = 1.0);

  ScheduleKind kind() const noexcept { return kind_; }
  double duration() const noexcept { return duration_; }
  double amplitude() const noexcept { return amplitude_; }

  double value(double t) const;
  double derivative(double t) const;

 private:
  Schedule(ScheduleKind kind, double duration, double amplitude);

  ScheduleKind kind_;
  double duration_;
  double amplitude_;
};

// Pump ramp 0 -> p_max and detuning ramp Delta_max -> 0 over the same T.
std::pair<Schedule, Schedule> loading_schedules(double duration, double p_max, double delta_max);

// Integral of cos(theta(t)) over [0, T] by adaptive Simpson (tol 1e-10).
double integrated_coupling(const Schedule& gate);

/// Dynamical phase of the i = j branch of the Rzz gate,
///   2 J p / (sqrt(r) K) * int_0^T cos(theta(t)) dt,
/// which reduces to 2 J |alpha|^2 int cos(theta) for identical KPOs. The
/// i != j branch is its negation. Requires a gate_phase schedule.
double analytic_gate_phase(const KpoSystemParams& params, const Schedule& gate);

inline constexpr double kThetaAmpBracket = 0.25;

/// theta_amp in [0, 0.25] with -2 * analytic_gate_phase = target, found by
/// bisection to 1e-8. Throws CalibrationError when the target is outside the
/// reachable range; the error carries the largest reachable |phase|.
double calibrate_theta_amp(const KpoSystemParams& params, double duration,
                           double target_relative_phase);

}  // namespace kposim
