// Copyright 2026 The schrodsim Authors
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

#include "schrodsim/circuit.hpp"
#include "schrodsim/fokker_planck.hpp"
#include "schrodsim/instances.hpp"
#include "schrodsim/schrod_engine.hpp"
#include "schrodsim/splitting.hpp"

namespace schrodsim {
namespace {

void BM_Expm(benchmark::State& state) {
  Rng rng(1);
  const Eigen::Index n = state.range(0);
  const Matrix a = random_stable_split(n, rng).A;
  for (auto _ : state) benchmark::DoNotOptimize(expm(a, 1.0));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(16)->Arg(64);

void BM_Evolve(benchmark::State& state) {
  Rng rng(2);
  const Eigen::Index n = state.range(0);
  const HermitianSplit split = random_stable_split(n, rng);
  const PGrid grid(-24.0, 40.0, static_cast<int>(state.range(1)));
  const SchrodState s0 = warp_initial(random_complex_vector(n, rng), grid);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(split, grid, s0, 1.0));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Evolve)->Args({4, 1024})->Args({8, 4096})->Args({8, 16384})->Unit(benchmark::kMillisecond);

void BM_Qft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Circuit qft = qft_circuit(n, 0, n);
  QuantumState s = QuantumState::basis(n, 1);
  for (auto _ : state) {
    qft.apply(s);
    benchmark::DoNotOptimize(s.mutable_amplitudes().data());
  }
}
BENCHMARK(BM_Qft)->DenseRange(4, 14, 5);

void BM_HeatSplitStep(benchmark::State& state) {
  const XGrid x(1, static_cast<int>(state.range(0)));
  const FokkerPlanckProblem prob = make_problem(x, 1.0, Potential::cosine(), FpForm::heat);
  const PGrid grid(-32.0, 480.0, 4096);
  const HeatSplitPropagator prop(x, heat_form_potential(prob), 1.0, grid, 0.01);
  const SchrodState s0 = heat_initial_state(steady_state(prob.V, 1.0).cast<cplx>(), x, grid);
  for (auto _ : state) benchmark::DoNotOptimize(prop.step(s0));
}
BENCHMARK(BM_HeatSplitStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace schrodsim

BENCHMARK_MAIN();
