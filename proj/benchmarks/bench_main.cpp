#include <random>

#include <benchmark/benchmark.h>

#include "nhspec/evolution.hpp"
#include "nhspec/models.hpp"
#include "nhspec/spectral.hpp"

using namespace nhspec;

namespace {

CMatrix random_matrix(Eigen::Index n, bool real) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), real ? 0.0 : g(rng));
  return m;
}

void BM_EigenvaluesComplex(benchmark::State& state) {
  const CMatrix h = random_matrix(state.range(0), false);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalues(h));
}
BENCHMARK(BM_EigenvaluesComplex)->Arg(32)->Arg(128)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EigenvaluesReal(benchmark::State& state) {
  const CMatrix h = random_matrix(state.range(0), true);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalues(h));
}
BENCHMARK(BM_EigenvaluesReal)->Arg(32)->Arg(128)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Eigendecompose(benchmark::State& state) {
  const CMatrix h = random_matrix(state.range(0), false);
  for (auto _ : state) benchmark::DoNotOptimize(spectral::eigendecompose(h));
}
BENCHMARK(BM_Eigendecompose)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Expm(benchmark::State& state) {
  const CMatrix a = random_matrix(state.range(0), false) * 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(evolution::expm(a));
}
BENCHMARK(BM_Expm)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_PUFockAssembly(benchmark::State& state) {
  const auto p = models::PUParams::from_frequencies(1.0, 1.0, 2.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(models::pu_hamiltonian_fock(n, n, p));
}
BENCHMARK(BM_PUFockAssembly)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_CubicOracle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(models::cubic_oracle(static_cast<int>(state.range(0)), 8.0));
}
BENCHMARK(BM_CubicOracle)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
