#include <benchmark/benchmark.h>

#include "spinchain/chain.hpp"
#include "spinchain/spectra.hpp"
#include "spinchain/thermal.hpp"

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

void BM_BuildHamiltonian(benchmark::State& state) {
  const sc::ChainSpec spec = make(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::build_hamiltonian(spec));
  }
  state.SetLabel(spec.key());
}

void BM_Diagonalize(benchmark::State& state) {
  const sc::ChainSpec spec = make(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::diagonalize(spec, false));
  }
  state.SetLabel(spec.key());
}

void BM_DiagonalizeWithVectors(benchmark::State& state) {
  const sc::ChainSpec spec = make(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::diagonalize(spec, true));
  }
  state.SetLabel(spec.key());
}

void BM_ReducedBondState(benchmark::State& state) {
  const sc::ChainSpec spec = make(1, static_cast<int>(state.range(0)));
  const sc::SpectralData sd = sc::diagonalize(spec, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sc::nn_reduced_density(sd, 1.0, 0));
  }
  state.SetLabel(spec.key());
}

}  // namespace

BENCHMARK(BM_BuildHamiltonian)->Args({1, 8})->Args({1, 12})->Args({2, 6})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Diagonalize)->Args({1, 8})->Args({1, 10})->Args({1, 12})->Args({2, 6})
    ->Args({2, 8})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiagonalizeWithVectors)->Args({1, 8})->Args({1, 10})->Args({2, 6})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReducedBondState)->Arg(6)->Arg(8)->Arg(10)
    ->Unit(benchmark::kMillisecond);
