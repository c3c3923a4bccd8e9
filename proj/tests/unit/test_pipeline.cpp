#include <gtest/gtest.h>

#include "qpoisson/errors.hpp"
#include "qpoisson/pipeline.hpp"
#include "support/oracles.hpp"

namespace qpoisson {
namespace {

TEST(QuantumPipeline, ExactModeIgnoresSeed) {
  const Grid2D grid = build_grid(1, 1, 3, 3);
  QuantumOptions options;
  options.mode = EstimateMode::Exact;
  options.seed = 1;
  const QuantumRun a = run_quantum_pipeline(SourceSpec::gaussian(0.5, 0.5), grid, options);
  options.seed = 999;
  const QuantumRun b = run_quantum_pipeline(SourceSpec::gaussian(0.5, 0.5), grid, options);
  EXPECT_FALSE(a.counts.has_value());
  EXPECT_EQ(a.solution.values, b.solution.values);
  EXPECT_TRUE(std::holds_alternative<ExactProvenance>(a.estimate.provenance));
}

TEST(QuantumPipeline, SampledModeIsSeedDeterministic) {
  const Grid2D grid = build_grid(1, 1, 3, 3);
  QuantumOptions options;
  options.shots = 3000;
  const QuantumRun a = run_quantum_pipeline(SourceSpec::polynomial_bump(), grid, options);
  const QuantumRun b = run_quantum_pipeline(SourceSpec::polynomial_bump(), grid, options);
  ASSERT_TRUE(a.counts.has_value());
  EXPECT_EQ(a.counts->shots, 3000u);
  EXPECT_EQ(a.counts->counts, b.counts->counts);
  EXPECT_EQ(a.solution.values, b.solution.values);
  const auto* provenance = std::get_if<SampledProvenance>(&a.estimate.provenance);
  ASSERT_NE(provenance, nullptr);
  EXPECT_EQ(provenance->seed, 42u);
}

TEST(QuantumPipeline, DenseAndCircuitGiveSameSolution) {
  const Grid2D grid = build_grid(1, 1, 4, 3);
  QuantumOptions options;
  options.mode = EstimateMode::Exact;
  options.correction = CorrectionKind::AnisotropicProfile;
  options.qft = QftImpl::Dense;
  const QuantumRun dense =
      run_quantum_pipeline(SourceSpec::anisotropic_sinusoid(1, 2), grid, options);
  options.qft = QftImpl::Circuit;
  const QuantumRun circuit =
      run_quantum_pipeline(SourceSpec::anisotropic_sinusoid(1, 2), grid, options);
  EXPECT_LT((dense.solution.values - circuit.solution.values).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(QuantumPipeline, DominantModeRecoversEigenmode) {
  const Grid2D grid = build_grid(1, 1, 5, 5);
  QuantumOptions options;
  options.mode = EstimateMode::Exact;
  options.dominant_mode_only = true;
  const QuantumRun run = run_quantum_pipeline(SourceSpec::sinusoid(1, 1), grid, options);
  const SolutionField exact =
      analytic_eigenmode_solution(1, 1, 1, 1, run.solution.xs, run.solution.ys);
  EXPECT_LT(mse(run.solution, exact), 1e-20);
  EXPECT_EQ(run.solution.meta.method, "quantum");
}

TEST(QuantumPipeline, TruncationIsRecorded) {
  const Grid2D grid = build_grid(1, 1, 3, 3);
  QuantumOptions options;
  options.truncation = Truncation{2, 3};
  const QuantumRun run = run_quantum_pipeline(SourceSpec::sinusoid(1, 1), grid, options);
  EXPECT_EQ(run.solution.truncation, (Truncation{2, 3}));
  options.truncation = Truncation{9, 3};
  EXPECT_THROW(run_quantum_pipeline(SourceSpec::sinusoid(1, 1), grid, options), TruncationError);
}

TEST(QuantumPipeline, AliasedSourceIsRejected) {
  EXPECT_THROW(run_quantum_pipeline(SourceSpec::sinusoid(2, 2), build_grid(1, 1, 1, 1), {}),
               ZeroSourceError);
}

TEST(ClassicalPipeline, DefaultsToFullWidth) {
  const Grid2D grid = build_grid(1, 1, 3, 3);
  const ClassicalRun run =
      run_classical_pipeline(SourceSpec::sinusoid(1, 1), grid, {default_quadrature(grid)});
  EXPECT_EQ(run.spectrum.a.rows(), 8);
  EXPECT_EQ(run.solution.truncation, (Truncation{8, 8}));
  EXPECT_EQ(default_quadrature(grid).subdivisions_x, 8);
  EXPECT_EQ(default_quadrature(build_grid(1, 1, 6, 2)).subdivisions_x, 64);
}

TEST(Names, RoundTrip) {
  for (auto mode : {EstimateMode::Sampled, EstimateMode::Exact}) {
    EXPECT_EQ(parse_estimate_mode(to_string(mode)), mode);
  }
  for (auto impl : {QftImpl::Dense, QftImpl::Circuit}) {
    EXPECT_EQ(parse_qft_impl(to_string(impl)), impl);
  }
  for (auto sign : {SignConvention::Poisson, SignConvention::Literal}) {
    EXPECT_EQ(parse_sign_convention(to_string(sign)), sign);
  }
}

}  // namespace
}  // namespace qpoisson
