#include <benchmark/benchmark.h>

#include "qpoisson/classical.hpp"
#include "qpoisson/pipeline.hpp"

namespace {

using namespace qpoisson;

void BM_QuadratureSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid2D grid = build_grid(1, 1, n, n);
  const SourceTable table =
      tabulate_source(SourceSpec::gaussian(0.5, 0.5), grid, default_quadrature(grid));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadrature_spectrum(table, grid, {grid.nx(), grid.ny()}));
  }
}
BENCHMARK(BM_QuadratureSpectrum)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_DstCoefficients(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SourceField field = sample_source(SourceSpec::gaussian(0.5, 0.5), build_grid(1, 1, n, n));
  for (auto _ : state) benchmark::DoNotOptimize(dst_coefficients(field));
}
BENCHMARK(BM_DstCoefficients)->DenseRange(3, 8);

// Reconstruction at (8, 8) for a range of retained mode counts.
void BM_ReconstructTruncated(benchmark::State& state) {
  static const QuantumRun run = [] {
    QuantumOptions options;
    options.correction = CorrectionKind::SinusoidProfile;
    return run_quantum_pipeline(SourceSpec::sinusoid(1, 1), build_grid(1, 1, 8, 8), options);
  }();
  const auto tau = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_on_grid(run.estimate, Truncation{tau, tau}));
  }
}
BENCHMARK(BM_ReconstructTruncated)->Arg(8)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
