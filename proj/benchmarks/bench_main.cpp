#include <benchmark/benchmark.h>

#include <cmath>

#include "gevrey/gevrey.hpp"

namespace {

using namespace gevrey;

void bm_lambert(benchmark::State& state) {
  double x = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w(x).w);
    x = x < 1e250 ? x * 1.7 : 1e-3;
  }
}
BENCHMARK(bm_lambert);

void bm_two_param_table(benchmark::State& state) {
  const TwoParamTable table(1.0, 2.0);
  double k = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(table(0.9, k));
    k = k < 1e3 ? k * 1.3 : 0.01;
  }
}
BENCHMARK(bm_two_param_table);

void bm_faa_enumerate(benchmark::State& state) {
  const MultiIndex alpha = {static_cast<int>(state.range(0)), 2};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_decompositions(alpha).size());
}
BENCHMARK(bm_faa_enumerate)->Arg(2)->Arg(4)->Arg(6);

GridSignal jump_signal(std::size_t n) {
  const auto grid = GridSpec::centered(n, 1.0);
  GridSignal u{grid, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) u.samples[i] = grid.x(i) >= 0.3 ? 1.0 : 0.0;
  return u;
}

void bm_stft(benchmark::State& state) {
  const auto u = jump_signal(static_cast<std::size_t>(state.range(0)));
  const auto g = make_bump_window(u.grid.dx, 0.1);
  const double hop = default_hop(u, g, WavefrontConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(stft(u, g, hop).values.size());
}
BENCHMARK(bm_stft)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);

void bm_wavefront_scan(benchmark::State& state) {
  const auto u = jump_signal(4096);
  const auto g = make_bump_window(u.grid.dx, 0.1);
  ScanSpec scan;
  for (int i = -18; i <= 18; ++i) scan.points.push_back(0.05 * i);
  for (auto _ : state) benchmark::DoNotOptimize(wavefront_scan(u, g, WavefrontConfig{}, scan).size());
}
BENCHMARK(bm_wavefront_scan)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
