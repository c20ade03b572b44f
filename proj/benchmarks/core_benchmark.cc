// Copyright 2026 The adaptlin Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "adaptlin/algorithm.hpp"
#include "adaptlin/analysis.hpp"
#include "adaptlin/problems.hpp"
#include "adaptlin/spectrum.hpp"

namespace {

using namespace adaptlin;

CoefficientSource decaying_input(Index support) {
  return CoefficientSource::from_rule([](Index i) { return 1.0 / (static_cast<double>(i) * std::sqrt(i)); },
                                      support);
}

// Block norm of a long block; cost is linear in its length.
void BM_Sigma(benchmark::State& state) {
  const Index n1 = static_cast<Index>(state.range(0));
  const Problem p{SingularSpectrum::algebraic(1.0, 1.0), Partition::doubling(0, n1), ConeParams(2.0, 0.5)};
  const auto f = decaying_input(4 * n1);
  for (auto _ : state) benchmark::DoNotOptimize(sigma(p, f, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n1));
}
BENCHMARK(BM_Sigma)->RangeMultiplier(8)->Range(64, 1 << 18);

void BM_AdaptiveAlgebraic(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  const Problem p{SingularSpectrum::algebraic(1.0, 2.0), Partition::geometric(1), ConeParams(2.0, 0.5)};
  const auto f = decaying_input(1 << 20);
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_algorithm(p, f, eps).cost);
}
BENCHMARK(BM_AdaptiveAlgebraic)->DenseRange(1, 5);

void BM_BallCost(benchmark::State& state) {
  const auto spectrum = Example1Problem(2.0).spectrum();
  const double ratio = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ball_cost(spectrum, ratio));
}
BENCHMARK(BM_BallCost)->DenseRange(2, 8, 2);

void BM_JDaggerBound(benchmark::State& state) {
  const Problem p{SingularSpectrum::algebraic(1.0, 1.0), Partition::geometric(1), ConeParams(2.0, 0.5)};
  for (auto _ : state) benchmark::DoNotOptimize(jdagger_bound(p, 1e-4, 1e2));
}
BENCHMARK(BM_JDaggerBound);

void BM_EnumerateSpectrum(benchmark::State& state) {
  const Index K = static_cast<Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_spectrum(3, K, halving_weights(3)).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(std::pow(2 * K + 1, 3)));
}
BENCHMARK(BM_EnumerateSpectrum)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

// The periodic derivative sweep at its smallest tolerance, setup excluded.
void BM_AdaptiveDerivative(benchmark::State& state) {
  const auto spectrum = enumerate_spectrum(3, 30, halving_weights(3));
  const auto input = RandomPeriodicInput::generate(3, 30, 20250101);
  const auto source = derivative_coefficients(spectrum, input);
  const Problem p{spectrum.spectrum(), Partition::doubling(0, 16), ConeParams(2.0, 0.5)};
  const double eps = state.range(0) == 0 ? 0.1 : 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_algorithm(p, source, eps).cost);
}
BENCHMARK(BM_AdaptiveDerivative)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
