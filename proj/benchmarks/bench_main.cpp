// Copyright 2025 The EvoStage Authors
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
//
// Microbenchmarks for the numerical hot paths: placement objectives, the
// Adam update, GP fitting/posterior, and population selection.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "evostage/bo/gp.hpp"
#include "evostage/heuristic.hpp"
#include "evostage/placement/adam.hpp"
#include "evostage/placement/instance.hpp"
#include "evostage/placement/numerics.hpp"
#include "evostage/placement/task.hpp"
#include "evostage/population.hpp"
#include "evostage/rng.hpp"

namespace {

using namespace evostage;

placement::PlacementInstance bench_instance(int cells) {
  return placement::make_random_instance(1234, cells, cells * 3 / 2, 8, 100.0);
}

void BM_Hpwl(benchmark::State& state) {
  const placement::PlacementInstance instance = bench_instance(static_cast<int>(state.range(0)));
  const std::vector<double> positions = placement::initial_positions(instance);
  for (auto _ : state) {
    benchmark::DoNotOptimize(placement::hpwl(instance, positions));
  }
}
BENCHMARK(BM_Hpwl)->Arg(100)->Arg(400);

void BM_SmoothWl(benchmark::State& state) {
  const placement::PlacementInstance instance = bench_instance(static_cast<int>(state.range(0)));
  const std::vector<double> positions = placement::initial_positions(instance);
  const double gamma = 4.0 * instance.bin_width();
  for (auto _ : state) {
    benchmark::DoNotOptimize(placement::smooth_wl(instance, positions, gamma));
  }
}
BENCHMARK(BM_SmoothWl)->Arg(100)->Arg(400);

void BM_DensityOverflow(benchmark::State& state) {
  const placement::PlacementInstance instance = bench_instance(static_cast<int>(state.range(0)));
  const std::vector<double> positions = placement::initial_positions(instance);
  for (auto _ : state) {
    benchmark::DoNotOptimize(placement::density_overflow(instance, positions));
  }
}
BENCHMARK(BM_DensityOverflow)->Arg(100)->Arg(400);

void BM_PenalizedObjective(benchmark::State& state) {
  const placement::PlacementInstance instance = placement::reference_instance();
  const std::vector<double> positions = placement::initial_positions(instance);
  const double gamma = 4.0 * instance.bin_width();
  for (auto _ : state) {
    benchmark::DoNotOptimize(placement::penalized_objective(instance, positions, gamma, 1.0));
  }
}
BENCHMARK(BM_PenalizedObjective);

void BM_AdamStep(benchmark::State& state) {
  const std::size_t dimension = static_cast<std::size_t>(state.range(0));
  placement::AdamState adam(dimension);
  std::vector<double> parameters(dimension, 0.5);
  std::vector<double> gradient(dimension);
  Rng rng(77);
  for (double& g : gradient) g = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    placement::adam_step(adam, parameters, gradient, 0.01);
    benchmark::DoNotOptimize(parameters.data());
  }
}
BENCHMARK(BM_AdamStep)->Arg(200)->Arg(2000);

void BM_GpFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4242);
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  for (int i = 0; i < n; ++i) {
    inputs.push_back({rng.uniform01(), rng.uniform01()});
    targets.push_back(rng.uniform(-2.0, 2.0));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bo::GPModel::fit(inputs, targets));
  }
}
BENCHMARK(BM_GpFit)->Arg(8)->Arg(15);

void BM_GpPosterior(benchmark::State& state) {
  Rng rng(4242);
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  for (int i = 0; i < 15; ++i) {
    inputs.push_back({rng.uniform01(), rng.uniform01()});
    targets.push_back(rng.uniform(-2.0, 2.0));
  }
  const bo::GPModel model = bo::GPModel::fit(inputs, targets);
  std::vector<std::vector<double>> queries;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
    queries.push_back({rng.uniform01(), rng.uniform01()});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.posterior(queries));
  }
}
BENCHMARK(BM_GpPosterior)->Arg(256)->Arg(2048);

void BM_SelectParents(benchmark::State& state) {
  Population population(5);
  std::vector<AlgorithmIndividual> seed;
  for (int i = 0; i < 5; ++i) {
    AlgorithmIndividual individual;
    individual.id = "ind-" + std::to_string(i);
    individual.legality = Legality::kPass;
    individual.score = static_cast<double>(10 - i);
    seed.push_back(std::move(individual));
  }
  population.update(std::move(seed));
  Rng rng(9001);
  for (auto _ : state) {
    benchmark::DoNotOptimize(population.select_parents(2, rng));
  }
}
BENCHMARK(BM_SelectParents);

}  // namespace

BENCHMARK_MAIN();
