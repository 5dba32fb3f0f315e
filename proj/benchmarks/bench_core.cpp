#include <benchmark/benchmark.h>

#include <numbers>

#include "powerdeform/obstructions.hpp"
#include "powerdeform/scanner.hpp"

using namespace powerdeform;

static void BM_PowerDeform(benchmark::State& state) {
  const DeformationFamily f = koebe_family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(power_deform(f, Complex(0.7, 0.3)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PowerDeform)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNSquared);

static void BM_GrunskyNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Series f = power_deform(koebe_family(2 * n + 1), 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(grunsky_norm(grunsky_coeffs(f, n)));
}
BENCHMARK(BM_GrunskyNorm)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_LuContours(benchmark::State& state) {
  const DeformationFamily f = powerlog_family(std::numbers::pi / 12.0);
  for (auto _ : state) benchmark::DoNotOptimize(LuContours(f));
}
BENCHMARK(BM_LuContours)->Unit(benchmark::kMillisecond);

static void BM_InLuQuery(benchmark::State& state) {
  const LuContours contours(powerlog_family(std::numbers::pi / 12.0));
  for (auto _ : state) benchmark::DoNotOptimize(in_lu(contours, Complex(0.3, 0.2)));
}
BENCHMARK(BM_InLuQuery)->Unit(benchmark::kMicrosecond);

static void BM_Collision(benchmark::State& state) {
  const DeformationFamily f = expfam_family();
  for (auto _ : state) benchmark::DoNotOptimize(collision_search(f, 1.5));
}
BENCHMARK(BM_Collision)->Unit(benchmark::kMillisecond);

static void BM_SmallScan(benchmark::State& state) {
  ScanConfig config;
  const DeformationFamily f = koebe_family(required_order(config));
  for (auto _ : state) benchmark::DoNotOptimize(scan(f, {-1.0, 2.0, -1.5, 1.5}, 0.1, config));
}
BENCHMARK(BM_SmallScan)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
