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

#include <benchmark/benchmark.h>

#include <numbers>

#include "kposim/analysis.hpp"
#include "kposim/diagnostics.hpp"
#include "kposim/dynamics.hpp"
#include "kposim/hamiltonians.hpp"

using namespace kposim;

namespace {

KpoSystemParams params(int n_max) {
  KpoSystemParams p;
  p.n_max = n_max;
  return p;
}

void BM_AssembleTwoKpo(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  const auto h = two_kpo_hamiltonian(p, Schedule::gate_phase(1.0, 0.1));
  SparseMatrix out;
  double t = 0.0;
  for (auto _ : state) {
    h.assemble(t, out);
    t += 1e-4;
    benchmark::DoNotOptimize(out.valuePtr());
  }
}
BENCHMARK(BM_AssembleTwoKpo)->Arg(20)->Arg(30);

// One gate of duration 0.05 / K; time per step is the figure of merit.
void BM_SchrodingerGate(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  const auto h = two_kpo_hamiltonian(p, Schedule::gate_phase(0.05, 0.1));
  const QubitFrame frame(p, std::numbers::pi / 2);
  EvolutionConfig cfg;
  cfg.duration = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(schrodinger_evolve(h, frame.psi_s(), cfg).stats.steps);
  state.SetItemsProcessed(state.iterations() * 500);
}
BENCHMARK(BM_SchrodingerGate)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

// First 20 steps of a T = 1 gate.
void BM_LindbladGate(benchmark::State& state) {
  auto p = params(static_cast<int>(state.range(0)));
  p.kappa = p.gamma_p = {1e-3, 1e-3};
  const auto h = two_kpo_hamiltonian(p, Schedule::gate_phase(1.0, 0.1));
  const QubitFrame frame(p, std::numbers::pi / 2);
  const auto rho0 = DensityMatrix::from_pure(frame.psi_s());
  EvolutionConfig cfg;
  cfg.duration = 0.02;
  cfg.step = 1e-3;
  for (auto _ : state)
    benchmark::DoNotOptimize(lindblad_evolve(h, DissipationRates::from(p), rho0, cfg).stats.steps);
  state.SetItemsProcessed(state.iterations() * 20);
}
BENCHMARK(BM_LindbladGate)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
  const FockSpace s(30);
  const auto cat = cat_state(s, Complex(std::sqrt(7.0), 0), Parity::even);
  GridSpec g;
  g.nx = g.ny = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wigner(cat, g).values.sum());
}
BENCHMARK(BM_WignerGrid)->Arg(61)->Arg(121)->Unit(benchmark::kMillisecond);

void BM_Displacement(benchmark::State& state) {
  const FockSpace s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(displacement_op(s, Complex(1.0, 0.5)).matrix()(0, 0));
}
BENCHMARK(BM_Displacement)->Arg(30)->Arg(60);

}  // namespace

int main(int argc, char** argv) {
  diagnostics::set_warning_sink([](const std::string&) {});
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
