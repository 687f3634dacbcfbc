#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "phasebound/eigensolve.hpp"
#include "phasebound/optimize.hpp"
#include "phasebound/rng.hpp"
#include "phasebound/simulate.hpp"
#include "phasebound/state.hpp"
#include "phasebound/toeplitz.hpp"

namespace {

using namespace phasebound;

StateVector random_state(int half_width, std::uint64_t seed) {
  Rng rng(derive_stream(seed, "bench_state"));
  std::vector<Complex> a(static_cast<std::size_t>(2 * half_width + 1));
  for (Complex& z : a) z = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return StateVector::normalized(-half_width, half_width, std::move(a));
}

void BM_CovariantMse(benchmark::State& state) {
  const StateVector s = random_state(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariant_mse(s));
  }
}
BENCHMARK(BM_CovariantMse)->Arg(64)->Arg(512)->Arg(2048)->Arg(8192);

void BM_QuadratureOracle(benchmark::State& state) {
  const StateVector s = random_state(64, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadrature_mse_oracle(s, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_QuadratureOracle)->Arg(1024)->Arg(4096);

void BM_SmallestEigenpairDense(benchmark::State& state) {
  const int half_width = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        smallest_kernel_eigenpair(half_width, 0.0, EigenpairMethod::dense));
  }
}
BENCHMARK(BM_SmallestEigenpairDense)->Arg(64)->Arg(256)->Arg(512);

void BM_SmallestEigenpairIterative(benchmark::State& state) {
  const int half_width = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        smallest_kernel_eigenpair(half_width, 0.0, EigenpairMethod::iterative));
  }
}
BENCHMARK(BM_SmallestEigenpairIterative)->Arg(512)->Arg(2048)->Arg(8192);

void BM_AvgConstraint(benchmark::State& state) {
  const double energy = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_avg_constraint(energy));
  }
}
BENCHMARK(BM_AvgConstraint)->Arg(8)->Arg(16)->Arg(32);

void BM_Sampler(benchmark::State& state) {
  const OutcomeSampler sampler(build_sine(static_cast<int>(state.range(0))));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample(0.3, 10000, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Sampler)->Arg(32)->Arg(400);

}  // namespace
