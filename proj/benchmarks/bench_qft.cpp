#include <random>

#include <benchmark/benchmark.h>

#include "qpoisson/qsim.hpp"

namespace {

using namespace qpoisson;

QuantumState random_state(int n, int m) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << (n + m));
  double sum = 0.0;
  for (Complex& a : amps) {
    a = {g(rng), g(rng)};
    sum += std::norm(a);
  }
  for (Complex& a : amps) a /= std::sqrt(sum);
  return QuantumState(n, m, std::move(amps));
}

void BM_Qft2dCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuantumState input = random_state(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_qft_2d(input, QftImpl::Circuit));
  }
  state.SetComplexityN(static_cast<std::int64_t>(input.size()));
}
BENCHMARK(BM_Qft2dCircuit)->DenseRange(3, 8)->Complexity();

void BM_Qft2dDense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuantumState input = random_state(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_qft_2d(input, QftImpl::Dense));
  }
  state.SetComplexityN(static_cast<std::int64_t>(input.size()));
}
BENCHMARK(BM_Qft2dDense)->DenseRange(3, 8)->Complexity();

void BM_MeasureCounts(benchmark::State& state) {
  const QuantumState input = random_state(6, 6);
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_counts(input, shots, 42));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MeasureCounts)->RangeMultiplier(10)->Range(1000, 1000000);

}  // namespace
