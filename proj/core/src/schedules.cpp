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

#include "kposim/schedules.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kposim/errors.hpp"
#include "kposim/hamiltonians.hpp"
#include "kposim/quadrature.hpp"

namespace kposim {

using std::numbers::pi;

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::gate_phase: return "gate_phase";
    case ScheduleKind::rotation: return "rotation";
    case ScheduleKind::pump_ramp: return "pump_ramp";
    case ScheduleKind::detuning_ramp: return "detuning_ramp";
    case ScheduleKind::constant: return "constant";
  }
  return "unknown";
}

Schedule::Schedule(ScheduleKind kind, double duration, double amplitude)
    : kind_(kind), duration_(duration), amplitude_(amplitude) {
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw ParameterError("Schedule: duration must be positive and finite");
  if (!std::isfinite(amplitude)) throw ParameterError("Schedule: amplitude must be finite");
}

Schedule Schedule::gate_phase(double duration, double theta_amp) {
  if (theta_amp < 0.0) throw ParameterError("gate_phase_schedule: theta_amp must be >= 0");
  return {ScheduleKind::gate_phase, duration, theta_amp};
}

Schedule Schedule::rotation(double duration) { return {ScheduleKind::rotation, duration, pi / 2}; }

Schedule Schedule::pump_ramp(double duration, double p_max) {
  return {ScheduleKind::pump_ramp, duration, p_max};
}

Schedule Schedule::detuning_ramp(double duration, double delta_max) {
  return {ScheduleKind::detuning_ramp, duration, delta_max};
}

Schedule Schedule::constant(double value, double duration) {
  return {ScheduleKind::constant, duration, value};
}

double Schedule::value(double t) const {
  const double T = duration_;
  switch (kind_) {
    case ScheduleKind::gate_phase:
      return pi / 2 - amplitude_ * pi * (1.0 - std::cos(2.0 * pi * t / T));
    case ScheduleKind::rotation:
      return pi / 4 * (1.0 - std::cos(pi * t / T));
    case ScheduleKind::pump_ramp:
      return amplitude_ * (1.0 - std::cos(pi * t / T)) / 2.0;
    case ScheduleKind::detuning_ramp:
      return amplitude_ * (1.0 + std::cos(pi * t / T)) / 2.0;
    case ScheduleKind::constant:
      return amplitude_;
  }
  return 0.0;
}

double Schedule::derivative(double t) const {
  const double T = duration_;
  switch (kind_) {
    case ScheduleKind::gate_phase:
      return -amplitude_ * pi * (2.0 * pi / T) * std::sin(2.0 * pi * t / T);
    case ScheduleKind::rotation:
      return pi / 4 * (pi / T) * std::sin(pi * t / T);
    case ScheduleKind::pump_ramp:
      return amplitude_ * (pi / T) * std::sin(pi * t / T) / 2.0;
    case ScheduleKind::detuning_ramp:
      return -amplitude_ * (pi / T) * std::sin(pi * t / T) / 2.0;
    case ScheduleKind::constant:
      return 0.0;
  }
  return 0.0;
}

std::pair<Schedule, Schedule> loading_schedules(double duration, double p_max, double delta_max) {
  return {Schedule::pump_ramp(duration, p_max), Schedule::detuning_ramp(duration, delta_max)};
}

double integrated_coupling(const Schedule& gate) {
  return integrate_adaptive_simpson([&](double t) { return std::cos(gate.value(t)); }, 0.0,
                                    gate.duration(), 1e-10);
}

double analytic_gate_phase(const KpoSystemParams& params, const Schedule& gate) {
  if (gate.kind() != ScheduleKind::gate_phase)
    throw ParameterError("analytic_gate_phase: schedule must be a gate_phase schedule");
  params.validate();
  // alpha_1 * alpha_2 = sqrt(p1/K) * sqrt(p2/(rK)).
  const double overlap = std::sqrt(params.p[0] / params.K) * std::sqrt(params.p[1] / (params.r * params.K));
  return 2.0 * params.J * overlap * integrated_coupling(gate);
}

double calibrate_theta_amp(const KpoSystemParams& params, double duration, double target) {
  auto relative = [&](double theta_amp) {
    return -2.0 * analytic_gate_phase(params, Schedule::gate_phase(duration, theta_amp));
  };
  if (target == 0.0) return 0.0;
  const double reachable = relative(kThetaAmpBracket);  // most negative value in the bracket
  // -2*phase is monotone decreasing in theta_amp on [0, 0.25] and equals 0 at 0.
  if ((reachable <= 0.0 && (target > 0.0 || target < reachable)) ||
      (reachable > 0.0 && (target < 0.0 || target > reachable))) {
    std::ostringstream os;
    os << "calibrate_theta_amp: target relative phase " << target << " unreachable for T = " << duration
       << " (reachable range is [" << std::min(0.0, reachable) << ", " << std::max(0.0, reachable)
       << "] for theta_amp in [0, " << kThetaAmpBracket << "])";
    throw CalibrationError(os.str(), std::abs(reachable));
  }
  double lo = 0.0;
  double hi = kThetaAmpBracket;
  const double f_lo = -target;  // relative(0) - target
  while (hi - lo >= 1e-9) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = relative(mid) - target;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace kposim
