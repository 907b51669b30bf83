#include <benchmark/benchmark.h>

#include <cmath>

#include "dsqg/dissipation.hpp"
#include "dsqg/fields.hpp"
#include "dsqg/galerkin.hpp"
#include "dsqg/interior.hpp"
#include "dsqg/spectral.hpp"

using namespace dsqg;

namespace {

DomainSpec square(int n) { return {M_PI, M_PI, n, n}; }

void BM_ToSpectral(benchmark::State& state) {
  const auto f = bump(square(int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(to_spectral(f));
}
BENCHMARK(BM_ToSpectral)->Arg(63)->Arg(127)->Arg(255);

void BM_FromSpectral(benchmark::State& state) {
  const auto a = to_spectral(bump(square(int(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(from_spectral(a));
}
BENCHMARK(BM_FromSpectral)->Arg(63)->Arg(127)->Arg(255);

void BM_NonlinearTerm(benchmark::State& state) {
  const auto a = to_spectral(bump(square(int(state.range(0)))));
  const auto dealias = state.range(1) ? Dealias::RefinedGrid : Dealias::TwoThirds;
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(a, dealias));
}
BENCHMARK(BM_NonlinearTerm)->Args({64, 0})->Args({128, 0})->Args({128, 1});

void BM_Step(benchmark::State& state) {
  const int n = int(state.range(0));
  SolverConfig cfg;
  cfg.n = n;
  cfg.dt = 1e-3;
  cfg.stepper = state.range(1) == 2 ? Stepper::IntegratingFactorRK2 : Stepper::IntegratingFactorRK3;
  const SolverState s{0.0, to_spectral(bump(square(n)))};
  for (auto _ : state) benchmark::DoNotOptimize(step(s, cfg));
}
BENCHMARK(BM_Step)->Args({64, 2})->Args({64, 3})->Args({128, 3});

void BM_ComputeD(benchmark::State& state) {
  const auto a = to_spectral(bump(square(int(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(compute_D(a, 1.0));
}
BENCHMARK(BM_ComputeD)->Arg(31)->Arg(63)->Unit(benchmark::kMillisecond);

void BM_WeightedHolder(benchmark::State& state) {
  const auto f = bump(square(int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(weighted_holder_seminorm(f, 0.5));
}
BENCHMARK(BM_WeightedHolder)->Arg(31)->Arg(63)->Unit(benchmark::kMillisecond);

void BM_WeightedHolderBruteforce(benchmark::State& state) {
  const auto f = bump(square(int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(weighted_holder_seminorm_bruteforce(f, 0.5));
}
BENCHMARK(BM_WeightedHolderBruteforce)->Arg(16)->Arg(31)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
