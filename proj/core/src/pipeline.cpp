#include "qpoisson/pipeline.hpp"

#include <algorithm>
#include <utility>

namespace qpoisson {

namespace {

constexpr std::pair<EstimateMode, std::string_view> kModeNames[] = {
    {EstimateMode::Sampled, "sampled"},
    {EstimateMode::Exact, "exact"},
};

constexpr std::pair<QftImpl, std::string_view> kQftNames[] = {
    {QftImpl::Dense, "dense"},
    {QftImpl::Circuit, "circuit"},
};

}  // namespace

std::string_view to_string(EstimateMode mode) noexcept {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::optional<EstimateMode> parse_estimate_mode(std::string_view name) noexcept {
  for (const auto& [m, n] : kModeNames) {
    if (n == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(QftImpl impl) noexcept {
  for (const auto& [i, name] : kQftNames) {
    if (i == impl) return name;
  }
  return "unknown";
}

std::optional<QftImpl> parse_qft_impl(std::string_view name) noexcept {
  for (const auto& [i, n] : kQftNames) {
    if (n == name) return i;
  }
  return std::nullopt;
}

CoefficientStage estimate_coefficients(QuantumState prepared, const Grid2D& grid,
                                       const QuantumOptions& options) {
  CoefficientStage stage{apply_qft_2d(std::move(prepared), options.qft, options.parallel),
                         std::nullopt, {}};
  if (options.mode == EstimateMode::Exact) {
    stage.a = amplitudes_to_coefficients(stage.transformed);
  } else {
    stage.counts = measure_counts(stage.transformed, options.shots, options.seed);
    stage.a = counts_to_coefficients(*stage.counts, grid);
  }
  if (options.dominant_mode_only) stage.a = isolate_dominant_mode(stage.a);
  return stage;
}

QuantumRun run_quantum_pipeline(const SourceSpec& source, const Grid2D& grid,
                                const QuantumOptions& options) {
  SourceField field = sample_source(source, grid);
  CoefficientStage stage = estimate_coefficients(prepare_state(field), grid, options);

  Provenance provenance = ExactProvenance{};
  if (options.mode == EstimateMode::Sampled) {
    provenance = SampledProvenance{options.shots, options.seed};
  }
  SpectrumEstimate estimate =
      estimate_spectrum(grid, std::move(stage.a), options.correction, field.norm2, provenance);
  SolutionField solution =
      reconstruct_on_grid(estimate, options.truncation, options.sign, options.parallel);
  solution.meta.source = source;

  return QuantumRun{std::move(field), std::move(stage.transformed), std::move(stage.counts),
                    std::move(estimate), std::move(solution)};
}

QuadratureSpec default_quadrature(const Grid2D& grid) {
  const int sx = std::max<int>(QuadratureSpec::kMinSubdivisions, static_cast<int>(grid.nx()));
  const int sy = std::max<int>(QuadratureSpec::kMinSubdivisions, static_cast<int>(grid.ny()));
  return QuadratureSpec{QuadratureRule::Simpson, sx, sy};
}

ClassicalRun run_classical_pipeline(const SourceSpec& source, const Grid2D& grid,
                                    const ClassicalOptions& options) {
  const ModeCount modes = options.modes.value_or(ModeCount{grid.nx(), grid.ny()});
  const SourceTable table = tabulate_source(source, grid, options.quadrature);
  ClassicalSpectrum spectrum = quadrature_spectrum(table, grid, modes, options.parallel);
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();
  SolutionField solution = reconstruct_classical(spectrum, xs, ys, options.parallel);
  solution.meta.source = source;
  return ClassicalRun{std::move(spectrum), std::move(solution)};
}

}  // namespace qpoisson
