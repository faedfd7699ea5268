#include <benchmark/benchmark.h>

#include "spinchain/chain.hpp"
#include "spinchain/scans.hpp"
#include "spinchain/separable.hpp"
#include "spinchain/spectra.hpp"

namespace sc = spinchain;

namespace {

sc::ChainSpec make(int twice, int sites) {
  sc::ChainSpec spec;
  spec.spin = sc::SpinValue::from_twice(twice);
  spec.sites = sites;
  spec.coupling = 1.0;
  spec.periodic = true;
  return spec;
}

// Bisection cost on a precomputed spectrum, the hot path of every scan.
void BM_CrossingSolve(benchmark::State& state) {
  const sc::ChainSpec spec = make(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
  const sc::SpectralData sd = sc::diagonalize(spec, false);
  const double e_min = sc::e_min_closed_form(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sc::characteristic_temperature(sd, e_min, sc::SeparableMethod::kClosedForm, 1e-8));
  }
  state.SetLabel(spec.key());
}

void BM_NumericSeparableMinimum(benchmark::State& state) {
  const sc::ChainSpec spec = make(1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::numeric_min_product_energy(spec));
  }
  state.SetLabel(spec.key());
}

void BM_DeltaMapColumnwise(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const std::vector<double> t_grid = sc::linspace(0.1, 4.0, points);
  const std::vector<double> j_grid = sc::linspace(0.1, 2.0, points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sc::delta_map(sc::SpinValue::from_twice(2), t_grid, j_grid));
  }
}

}  // namespace

BENCHMARK(BM_CrossingSolve)->Args({1, 2})->Args({1, 8})->Args({1, 12})->Args({2, 8})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NumericSeparableMinimum)->Arg(3)->Arg(5)->Arg(7)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaMapColumnwise)->Arg(16)->Arg(32)->Arg(64)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
