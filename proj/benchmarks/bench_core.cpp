#include <benchmark/benchmark.h>

#include "hk/dynamics.hpp"
#include "hk/energy.hpp"
#include "hk/generators.hpp"
#include "hk/spectral.hpp"

namespace {

hk::OpinionState dense_config(int n) { return hk::random_config(n, 2, 5.0, 12345); }

void BM_BuildGraph(benchmark::State& state) {
  const auto x = dense_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::build_graph(x));
  }
}
BENCHMARK(BM_BuildGraph)->Range(16, 512);

void BM_HkStep(benchmark::State& state) {
  const auto x = dense_config(static_cast<int>(state.range(0)));
  const auto g = hk::build_graph(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::hk_step(x, g));
  }
}
BENCHMARK(BM_HkStep)->Range(16, 512);

void BM_Energy(benchmark::State& state) {
  const auto x = dense_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::energy(x));
  }
}
BENCHMARK(BM_Energy)->Range(16, 512);

void BM_SpectralReport(benchmark::State& state) {
  const auto x = dense_config(static_cast<int>(state.range(0)));
  const auto g = hk::build_graph(x);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::spectral_report(g));
  }
}
BENCHMARK(BM_SpectralReport)->Range(16, 256);

void BM_SimulateCircle(benchmark::State& state) {
  const auto x0 = hk::circle_config_by_chord(static_cast<int>(state.range(0)), 0.99);
  hk::SimulateOptions opts;
  opts.cap = hk::default_cap(x0.n);
  opts.with_spectral = false;
  opts.record_states = false;
  opts.record_diagnostics = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hk::simulate(x0, opts));
  }
}
BENCHMARK(BM_SimulateCircle)->Arg(20)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
