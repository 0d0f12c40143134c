#include <benchmark/benchmark.h>

#include "mhd2d/experiment.hpp"
#include "mhd2d/integrator.hpp"

using namespace mhd2d;

static void BM_DealiasedProduct(benchmark::State& state) {
  const WaveLattice lat = WaveLattice::make(static_cast<int>(state.range(0)));
  const SpectralScalar f = random_divfree_field(lat, 1).x1;
  const SpectralScalar g = random_divfree_field(lat, 2).x1;
  for (auto _ : state) benchmark::DoNotOptimize(dealiased_product(f, g));
}
BENCHMARK(BM_DealiasedProduct)->Arg(32)->Arg(64)->Arg(128);

static void BM_Rhs(benchmark::State& state) {
  const WaveLattice lat = WaveLattice::make(static_cast<int>(state.range(0)));
  FlowState s(0.0, random_divfree_field(lat, 1), random_divfree_field(lat, 2));
  const BackgroundField bg{golden_vector(), 2.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(rhs(s, bg));
}
BENCHMARK(BM_Rhs)->Arg(32)->Arg(64)->Arg(128);

static void BM_SobolevNorm(benchmark::State& state) {
  const WaveLattice lat = WaveLattice::make(static_cast<int>(state.range(0)));
  const SpectralScalar f = random_divfree_field(lat, 1).x1;
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_norm(f, 15.0));
}
BENCHMARK(BM_SobolevNorm)->Arg(64)->Arg(128);

static void BM_StepIfRk4(benchmark::State& state) {
  const WaveLattice lat = WaveLattice::make(static_cast<int>(state.range(0)));
  FlowState s(0.0, random_divfree_field(lat, 1), random_divfree_field(lat, 2));
  const BackgroundField bg{golden_vector(), 2.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(step_if_rk4(s, bg, 1e-3));
}
BENCHMARK(BM_StepIfRk4)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
