// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "qoreduce/benchmark_model.hpp"
#include "qoreduce/interpolation.hpp"
#include "qoreduce/transfer.hpp"

namespace {

using namespace qoreduce;

const QuadraticOutputSystem& Chain() {
  static const QuadraticOutputSystem sys = LiftSecondOrder(GenerateBenchmark(BenchmarkSpec::Default()));
  return sys;
}

const SampleBasis& Samples() {
  static const SampleBasis basis = Presample(Chain(), DefaultPresampleOmegas(), true);
  return basis;
}

void BM_TransferOnAxis(benchmark::State& state) {
  const auto& sys = Chain();
  for (auto _ : state) benchmark::DoNotOptimize(TransferOnAxis(sys, kTwoPi * 48.0));
}
BENCHMARK(BM_TransferOnAxis)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const auto& sys = Chain();
  const auto grid = LinearGrid(0.0, 250.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Sweep(sys, grid));
}
BENCHMARK(BM_Sweep)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Presample(benchmark::State& state) {
  const auto& sys = Chain();
  const auto omegas = DefaultPresampleOmegas();
  for (auto _ : state) benchmark::DoNotOptimize(Presample(sys, omegas, state.range(0) != 0));
}
BENCHMARK(BM_Presample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Greedy(benchmark::State& state) {
  const auto& sys = Chain();
  const auto& basis = Samples();
  for (auto _ : state) benchmark::DoNotOptimize(GreedySelect(sys, basis, state.range(0), true));
}
BENCHMARK(BM_Greedy)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Averaged(benchmark::State& state) {
  const auto& sys = Chain();
  const auto& basis = Samples();
  for (auto _ : state) benchmark::DoNotOptimize(AveragedBasis(sys, basis, 40, true));
}
BENCHMARK(BM_Averaged)->Unit(benchmark::kMillisecond);

void BM_Irka(benchmark::State& state) {
  const auto& sys = Chain();
  const auto poles = DefaultIrkaPoles(state.range(0), kTwoPi, kTwoPi * 250.0);
  for (auto _ : state) benchmark::DoNotOptimize(LqoIrka(sys, state.range(0), poles));
}
BENCHMARK(BM_Irka)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
