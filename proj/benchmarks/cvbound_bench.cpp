#include <benchmark/benchmark.h>

#include "cvbound/quadrature.hpp"
#include "cvbound/simulator.hpp"
#include "cvbound/verdict.hpp"

namespace {

using namespace cvbound;

void BM_QuadGaussianGain(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(average_fidelity_quad(GaussianIso{1.0}, Gain{0.5}).value);
  }
}
BENCHMARK(BM_QuadGaussianGain)->Unit(benchmark::kMillisecond);

void BM_QuadDiskCurve(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  const RadialCurve curve({{0.0, 0.0}, {radius / 2, radius / 3}, {radius, 0.8 * radius}, {radius + 2, radius + 1}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(average_fidelity_quad(UniformDisk{radius}, curve).value);
  }
}
BENCHMARK(BM_QuadDiskCurve)->Arg(1)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(UniformDisk{2.0}, Gain{0.7}, n, 1, 1).mean);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Simulate)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Bootstrap(benchmark::State& state) {
  const auto records = generate_dataset(3.0, state.range(0), SimulatedGain{0.8}, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bootstrap_ci(records, 0.5, 1000, 2, 0.95, 1));
  }
}
BENCHMARK(BM_Bootstrap)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
