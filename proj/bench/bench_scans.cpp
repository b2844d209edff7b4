// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "primroot/conditions.hpp"
#include "primroot/divisor_lab.hpp"
#include "primroot/poisson_model.hpp"
#include "primroot/prime_engine.hpp"

using namespace primroot;

namespace {

const double kDelta = std::exp(-std::exp(std::numbers::e));

void BM_SieveSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(primes_in_range_serial(0, state.range(0)));
}
void BM_SieveParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(primes_in_range(0, state.range(0)));
}

void BM_ExceptionScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exception_scan_serial(state.range(0), 4, 2.0));
}
void BM_ExceptionScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exception_scan(state.range(0), 4, 2.0));
}

void BM_DensitySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exceptional_density_serial(state.range(0), kDelta, 1.0));
}
void BM_DensityParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exceptional_density(state.range(0), kDelta, 1.0));
}

void BM_WjSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(empirical_Wj_serial(1, state.range(0)));
}
void BM_WjParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(empirical_Wj(1, state.range(0)));
}

}  // namespace

BENCHMARK(BM_SieveSerial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveParallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExceptionScanSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExceptionScanParallel)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensitySerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityParallel)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WjSerial)->Arg(10'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WjParallel)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
