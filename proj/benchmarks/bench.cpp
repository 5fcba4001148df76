// SPDX-License-Identifier: MIT
#include <benchmark/benchmark.h>

#include "emte/rng.hpp"
#include "emte/tensor.hpp"

using namespace emte;

static void BM_MatInverse(benchmark::State& state) {
  Rng rng(5);
  const Ten2 f = rng.deformation(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse(f));
  }
}
BENCHMARK(BM_MatInverse);

static void BM_ContractLeg(benchmark::State& state) {
  Rng rng(6);
  Ten4 a;
  for (double& x : a.m) x = rng.uniform(-1, 1);
  const Ten2 l = rng.ten2(-1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(contract_leg(a, l));
  }
}
BENCHMARK(BM_ContractLeg);

BENCHMARK_MAIN();
