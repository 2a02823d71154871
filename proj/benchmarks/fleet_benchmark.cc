/*
 * Copyright 2026 The CDL Fleet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "cdl/config.h"
#include "cdl/control.h"
#include "cdl/fleet.h"
#include "cdl/rbf.h"

namespace cdl {
namespace {

void BM_EvalBasis(benchmark::State& state) {
  const RbfLattice lattice = RingFleetConfig().rbf.Lattice();
  Eigen::Vector2d x(1.3, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EvalBasis(lattice, x));
    x.x() += 1e-9;
  }
}
BENCHMARK(BM_EvalBasis);

void BM_WeightUpdateRate(benchmark::State& state) {
  const FleetConfig cfg = RingFleetConfig();
  const RbfLattice lattice = cfg.rbf.Lattice();
  const Eigen::VectorXd s = EvalBasis(lattice, {1.3, 0.8});
  const WeightMatrix own = WeightMatrix::Random(lattice.size(), 2);
  const WeightMatrix a = WeightMatrix::Random(lattice.size(), 2);
  const WeightMatrix b = WeightMatrix::Random(lattice.size(), 2);
  const std::vector<NeighborWeights> nb = {{1.0, &a}, {1.0, &b}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        WeightUpdateRate(s, {0.2, -0.1}, own, nb, cfg.controller));
  }
}
BENCHMARK(BM_WeightUpdateRate);

// Simulated seconds of the four-vehicle learning run per iteration.
void BM_RunLearning(benchmark::State& state) {
  FleetConfig cfg = RingFleetConfig();
  cfg.sim.t_end = static_cast<double>(state.range(0));
  cfg.sim.consolidation_window.reset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunLearning(cfg).records.size());
  }
  state.counters["steps/s"] = benchmark::Counter(
      cfg.sim.t_end / cfg.sim.dt, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_RunLearning)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_RunExperience(benchmark::State& state) {
  FleetConfig cfg = RingFleetConfig();
  cfg.sim.t_end = 5.0;
  const std::vector<WeightMatrix> zero(
      cfg.n(), WeightMatrix::Zero(cfg.rbf.Lattice().size(), 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunExperience(cfg, zero, {2, 0, 1, 3}).records.size());
  }
}
BENCHMARK(BM_RunExperience)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cdl

BENCHMARK_MAIN();
