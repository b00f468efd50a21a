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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kposim/errors.hpp"
#include "kposim/hamiltonians.hpp"
#include "kposim/quadrature.hpp"
#include "kposim/schedules.hpp"

using namespace kposim;
using std::numbers::pi;

namespace {

// Composite Simpson with a fixed, even number of panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST(Quadrature, AdaptiveSimpsonOnSmoothIntegrands) {
  EXPECT_NEAR(integrate_adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi), 2.0, 1e-10);
  EXPECT_NEAR(integrate_adaptive_simpson([](double x) { return std::exp(-x * x); }, -5.0, 5.0), std::sqrt(pi), 1e-9);
  EXPECT_NEAR(integrate_adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0), 4.0, 1e-12);
}

TEST(Schedules, EndpointsAndMidpoints) {
  const auto g = Schedule::gate_phase(1.0, 0.1);
  EXPECT_NEAR(g.value(0.0), pi / 2, 1e-15);
  EXPECT_NEAR(g.value(1.0), pi / 2, 1e-14);
  EXPECT_NEAR(g.value(0.5), pi / 2 - 0.2 * pi, 1e-14);
  EXPECT_NEAR(std::cos(g.value(0.5)), 0.5878, 1e-4);

  const auto r = Schedule::rotation(0.6);
  EXPECT_NEAR(r.value(0.0), 0.0, 1e-15);
  EXPECT_NEAR(r.value(0.6), pi / 2, 1e-14);

  const auto [pump, det] = loading_schedules(2.0, 4.0, 3.0);
  EXPECT_NEAR(pump.value(0.0), 0.0, 1e-15);
  EXPECT_NEAR(pump.value(2.0), 4.0, 1e-14);
  EXPECT_NEAR(det.value(0.0), 3.0, 1e-15);
  EXPECT_NEAR(det.value(2.0), 0.0, 1e-14);
}

TEST(Schedules, AnalyticDerivatives) {
  EXPECT_NEAR(Schedule::gate_phase(1.0, 0.1).derivative(0.25), -0.2 * pi * pi, 1e-12);
  EXPECT_NEAR(-0.2 * pi * pi, -1.974, 1e-3);
  EXPECT_NEAR(Schedule::rotation(0.6).derivative(0.3), pi * pi / (4 * 0.6), 1e-12);
  EXPECT_NEAR(pi * pi / 2.4, 4.112, 1e-3);
}

TEST(Schedules, DerivativeMatchesCentralDifference) {
  const std::vector<Schedule> all = {Schedule::gate_phase(0.7, 0.13), Schedule::rotation(0.4),
                                     Schedule::pump_ramp(1.5, 4.0), Schedule::detuning_ramp(1.5, 3.0),
                                     Schedule::constant(0.3, 2.0)};
  const double h = 1e-5;
  for (const auto& s : all)
    for (double f : {0.1, 0.33, 0.5, 0.77, 0.9}) {
      const double t = f * s.duration();
      const double fd = (s.value(t + h) - s.value(t - h)) / (2 * h);
      EXPECT_NEAR(s.derivative(t), fd, 1e-6 * (1 + std::abs(fd))) << to_string(s.kind()) << " t=" << t;
    }
}

TEST(Schedules, RotationDetuningHasOneNegativeLobe) {
  const auto r = Schedule::rotation(0.6);
  double tmin = 0, vmin = 0;
  for (int i = 0; i <= 600; ++i) {
    const double t = 0.6 * i / 600;
    const double d = -r.derivative(t);
    EXPECT_LE(d, 1e-14);
    if (d < vmin) vmin = d, tmin = t;
  }
  EXPECT_NEAR(tmin, 0.3, 1e-3);
}

TEST(Schedules, InvalidArguments) {
  EXPECT_THROW(Schedule::gate_phase(0.0, 0.1), ParameterError);
  EXPECT_THROW(Schedule::gate_phase(1.0, -0.1), ParameterError);
  EXPECT_THROW(Schedule::rotation(-1.0), ParameterError);
}

TEST(GatePhase, QuadratureAgreesWithFixedSimpson) {
  KpoSystemParams p;
  const auto g = Schedule::gate_phase(1.0, 0.1);
  const double ref = simpson([&](double t) { return std::cos(g.value(t)); }, 0.0, 1.0, 4000);
  EXPECT_NEAR(integrated_coupling(g), ref, 1e-10);
  EXPECT_NEAR(analytic_gate_phase(p, g), 2.0 * p.J * 7.0 * ref, 1e-8);
}

TEST(GatePhase, AsymmetricKerrUsesSqrtR) {
  KpoSystemParams p;
  p.r = 1.5;
  const auto g = Schedule::gate_phase(1.0, 0.1);
  const double ref = simpson([&](double t) { return std::cos(g.value(t)); }, 0.0, 1.0, 4000);
  EXPECT_NEAR(analytic_gate_phase(p, g), 2.0 * p.J * 7.0 / std::sqrt(1.5) * ref, 1e-8);
}

TEST(GatePhase, CalibrationHitsTarget) {
  KpoSystemParams p;
  const double amp = calibrate_theta_amp(p, 1.0, -pi / 2);
  EXPECT_GT(amp, 0.0);
  EXPECT_LE(amp, kThetaAmpBracket);
  EXPECT_NEAR(analytic_gate_phase(p, Schedule::gate_phase(1.0, amp)), pi / 4, 1e-8);
}

TEST(GatePhase, UnreachableTargetReportsMaximum) {
  KpoSystemParams p;
  try {
    calibrate_theta_amp(p, 1.0, -10 * pi);
    FAIL() << "expected CalibrationError";
  } catch (const CalibrationError& e) {
    // Never more than the 2 J |alpha|^2 T bound.
    EXPECT_GT(e.max_achievable(), 0.0);
    EXPECT_LE(e.max_achievable(), 2 * 2 * 0.2 * 7.0 * 1.0 + 1e-12);
  }
}
