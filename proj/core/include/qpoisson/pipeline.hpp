#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "qpoisson/classical.hpp"
#include "qpoisson/domain.hpp"
#include "qpoisson/qsim.hpp"
#include "qpoisson/spectral.hpp"

namespace qpoisson {

enum class EstimateMode { Sampled, Exact };

std::string_view to_string(EstimateMode mode) noexcept;
std::optional<EstimateMode> parse_estimate_mode(std::string_view name) noexcept;
std::string_view to_string(QftImpl impl) noexcept;
std::optional<QftImpl> parse_qft_impl(std::string_view name) noexcept;

struct QuantumOptions {
  EstimateMode mode = EstimateMode::Sampled;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 42;
  QftImpl qft = QftImpl::Circuit;
  CorrectionKind correction = CorrectionKind::Identity;
  bool dominant_mode_only = false;
  std::optional<Truncation> truncation;
  SignConvention sign = SignConvention::Poisson;
  bool parallel = false;
};

struct QuantumRun {
  SourceField field;
  QuantumState transformed;
  std::optional<CountsMap> counts;  // absent in exact mode
  SpectrumEstimate estimate;
  SolutionField solution;
};

/// Sampling, encoding, 2D QFT, coefficient estimation, correction and
/// reconstruction on the grid nodes. Exact mode reads the post-QFT
/// amplitudes and never touches the seed.
QuantumRun run_quantum_pipeline(const SourceSpec& source, const Grid2D& grid,
                                const QuantumOptions& options);

/// Coefficient stage shared by the pipeline and the benchmark: QFT plus
/// either amplitude readout or sampling.
struct CoefficientStage {
  QuantumState transformed;
  std::optional<CountsMap> counts;
  ComplexMatrix a;
};
CoefficientStage estimate_coefficients(QuantumState prepared, const Grid2D& grid,
                                       const QuantumOptions& options);

struct ClassicalOptions {
  QuadratureSpec quadrature;
  std::optional<ModeCount> modes;  // full width when absent
  bool parallel = false;
};

/// Simpson with max(8, N) x max(8, M) subdivisions.
QuadratureSpec default_quadrature(const Grid2D& grid);

struct ClassicalRun {
  ClassicalSpectrum spectrum;
  SolutionField solution;
};

ClassicalRun run_classical_pipeline(const SourceSpec& source, const Grid2D& grid,
                                    const ClassicalOptions& options);

}  // namespace qpoisson
