#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpoisson/domain.hpp"
#include "qpoisson/qsim.hpp"
#include "qpoisson/types.hpp"

namespace qpoisson {

/// Per-mode complex multipliers that put back the phase and spectral weight
/// measurement discards. Mode indices p, q are 1-based.
enum class CorrectionKind {
  Identity,            // 1
  SinusoidProfile,     // exp(-i pi (p+q)/2) (pq)^2 / (p+q)^3
  AnisotropicProfile,  // exp(-i pi (p+q))   (pq)^2 / (p+q)^3
  GaussianProfile,     // exp(-i pi pq/2)
  MixedProfile,        // exp(-i pi pq)      (pq)^2 / (p^2+q^2)^{3/2}
};

std::string_view to_string(CorrectionKind kind) noexcept;
std::optional<CorrectionKind> parse_correction_kind(std::string_view name) noexcept;

/// Profile paired with each source kind in the catalog.
CorrectionKind default_correction_for(SourceKind kind) noexcept;

Complex correction_multiplier(CorrectionKind kind, int p, int q);

/// a(k, l) = sqrt(C_kl / sum C), real and nonnegative. Outcomes outside the
/// grid throw DomainError.
ComplexMatrix counts_to_coefficients(const CountsMap& counts, const Grid2D& grid);

/// Post-QFT amplitudes reshaped to N x M, phases kept.
ComplexMatrix amplitudes_to_coefficients(const QuantumState& state);

/// corrected(i, j) = a(i, j) * multiplier(i + 1, j + 1).
ComplexMatrix apply_correction(const ComplexMatrix& a, CorrectionKind kind);

/// Zeroes everything except the largest-modulus entry, rescaled to modulus 1
/// so the result stays normalized. Ties go to the first entry in x-major
/// order.
ComplexMatrix isolate_dominant_mode(const ComplexMatrix& a);

/// lambda(i, j) = (pi (i+1) / Lx)^2 + (pi (j+1) / Ly)^2.
RealMatrix laplacian_eigenvalues(const Grid2D& grid);

struct SampledProvenance {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};
struct ExactProvenance {};
using Provenance = std::variant<SampledProvenance, ExactProvenance>;

std::string describe(const Provenance& provenance);

struct SpectrumEstimate {
  Grid2D grid;
  ComplexMatrix a;          // unit-norm coefficients
  ComplexMatrix corrected;  // a after the correction profile
  RealMatrix eigenvalues;
  ComplexMatrix b;          // corrected / eigenvalues
  // Factor that converts the unit-norm spectrum back to source units.
  double amplitude_scale = 0.0;
  CorrectionKind correction = CorrectionKind::Identity;
  Provenance provenance;
};

/// Factor s such that s * sum Re(corrected(i,j)) phi_ij, sampled on the
/// grid nodes, has discrete 2-norm `source_norm`. Uses the discrete sine
/// orthogonality on the half-open grid: modes p < N are orthogonal with
/// squared norm N/2 per axis, and mode N vanishes at every node. Returns 0
/// when no retained mode is visible on the grid.
double restore_amplitude_scale(const ComplexMatrix& corrected, const Grid2D& grid,
                               double source_norm);

/// Applies the correction, divides by the Laplacian eigenvalues and fixes
/// the amplitude scale. Throws NormalizationError if sum |a|^2 is not 1
/// within 1e-10 and DomainError on a shape mismatch.
SpectrumEstimate estimate_spectrum(const Grid2D& grid, ComplexMatrix a, CorrectionKind correction,
                                   double source_norm, Provenance provenance);

/// Literal keeps the series sign as written for the forward expansion;
/// Poisson negates it so that Laplacian(u) = f.
enum class SignConvention { Poisson, Literal };

std::string_view to_string(SignConvention sign) noexcept;
std::optional<SignConvention> parse_sign_convention(std::string_view name) noexcept;

struct Truncation {
  std::size_t tx = 0;
  std::size_t ty = 0;
  bool operator==(const Truncation&) const = default;
};

struct SolutionMeta {
  std::string method;  // "quantum", "classical-quadrature", "classical-dst", ...
  std::optional<SourceSpec> source;
  std::optional<CorrectionKind> correction;
  std::optional<Provenance> provenance;
  SignConvention sign = SignConvention::Poisson;
};

struct SolutionField {
  std::vector<double> xs;
  std::vector<double> ys;
  RealMatrix values;  // xs.size() x ys.size()
  Truncation truncation;
  SolutionMeta meta;
};

/// u(x, y) = sum_{p<=rows, q<=cols} c(p-1, q-1) sin(p pi x / Lx) sin(q pi y / Ly)
/// at every (xs[r], ys[s]). Each output value is a fixed-order sum, so the
/// parallel and serial paths agree bitwise.
RealMatrix evaluate_sine_series(const RealMatrix& coefficients, double lx, double ly,
                                std::span<const double> xs, std::span<const double> ys,
                                bool parallel = false);

/// Throws TruncationError unless 1 <= tx <= N and 1 <= ty <= M.
SolutionField reconstruct(const SpectrumEstimate& estimate, std::span<const double> xs,
                          std::span<const double> ys, Truncation truncation,
                          SignConvention sign = SignConvention::Poisson, bool parallel = false);

/// Reconstruction on the estimate's own grid nodes at full width.
SolutionField reconstruct_on_grid(const SpectrumEstimate& estimate,
                                  std::optional<Truncation> truncation = std::nullopt,
                                  SignConvention sign = SignConvention::Poisson,
                                  bool parallel = false);

/// Mean squared pointwise difference. Throws GridMismatchError unless both
/// fields share coordinates (within 1e-12).
double mse(const SolutionField& u, const SolutionField& v);

/// CSV `i,j,re_a,im_a,lambda,re_b,im_b`.
void write_spectrum_csv(std::ostream& out, const SpectrumEstimate& estimate);

/// CSV `x,y,u`, x-major.
void write_solution_csv(std::ostream& out, const SolutionField& field);

/// gnuplot `nonuniform matrix` text: the first row holds the column count and
/// the y coordinates, every following row holds x then u(x, y_0..).
void write_solution_gnuplot(std::ostream& out, const SolutionField& field);

}  // namespace qpoisson
