#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qpoisson/domain.hpp"
#include "qpoisson/spectral.hpp"
#include "qpoisson/types.hpp"

namespace qpoisson {

enum class QuadratureRule { Trapezoid, Simpson };

std::string_view to_string(QuadratureRule rule) noexcept;
std::optional<QuadratureRule> parse_quadrature_rule(std::string_view name) noexcept;

struct QuadratureSpec {
  static constexpr int kMinSubdivisions = 8;

  QuadratureRule rule = QuadratureRule::Simpson;
  int subdivisions_x = 256;
  int subdivisions_y = 256;

  /// Throws QuadratureError: fewer than kMinSubdivisions per axis, or odd
  /// counts under Simpson.
  void validate() const;
};

/// Source values and composite-rule weights on the quadrature nodes.
struct SourceTable {
  double lx = 1.0;
  double ly = 1.0;
  std::vector<double> xs, wx;
  std::vector<double> ys, wy;
  RealMatrix values;  // xs.size() x ys.size()
};

SourceTable tabulate_source(const SourceSpec& spec, const Grid2D& grid, const QuadratureSpec& quad);

/// 4 / (Lx Ly) * integral of f sin(kx pi x / Lx) sin(ky pi y / Ly) over the
/// rectangle, by the tabulated composite rule. Throws QuadratureError for
/// modes < 1.
double quadrature_coefficient(const SourceTable& table, int kx, int ky);
double quadrature_coefficient(const SourceSpec& spec, int kx, int ky, const Grid2D& grid,
                              const QuadratureSpec& quad);

struct ModeCount {
  std::size_t kx = 0;
  std::size_t ky = 0;
  bool operator==(const ModeCount&) const = default;
};

/// Sine-series coefficients a(kx-1, ky-1) with their Laplacian eigenvalues.
struct ClassicalSpectrum {
  Grid2D grid;
  RealMatrix a;
  RealMatrix eigenvalues;
};

/// One independent quadrature per (kx, ky); the pairs may run in parallel.
/// Throws DomainError unless 1 <= Kx <= N and 1 <= Ky <= M.
ClassicalSpectrum quadrature_spectrum(const SourceTable& table, const Grid2D& grid,
                                      ModeCount modes, bool parallel = false);

/// u = -sum a / lambda * phi at the given points, so that Laplacian(u) = f.
SolutionField reconstruct_classical(const ClassicalSpectrum& spectrum, std::span<const double> xs,
                                    std::span<const double> ys, bool parallel = false);

/// Quadrature coefficients followed by reconstruction on the grid nodes.
SolutionField classical_solve(const SourceSpec& spec, const Grid2D& grid, const QuadratureSpec& quad,
                              ModeCount modes, bool parallel = false);

/// Type-I discrete sine transform of the interior samples, scaled so a unit
/// eigenmode yields coefficient 1. Returns an (N-1) x (M-1) matrix; mode N is
/// invisible on the grid and is not estimated.
RealMatrix dst_coefficients(const SourceField& field);

/// Sine-series solution from the leading DST coefficients on the grid nodes.
/// Throws DomainError unless 1 <= Kx < N and 1 <= Ky < M.
SolutionField dst_solve(const SourceField& field, ModeCount modes);

/// Five-point finite-difference solve of Laplacian(u) = f, u = 0 on the
/// boundary, over a (resolution + 1)^2 node grid including both edges.
/// Throws DomainError for resolution < 16 and ConvergenceError when the
/// discrete residual exceeds 1e-10 (relative to max(1, max|f|)).
SolutionField fd_poisson_solve(const SourceSpec& spec, int resolution, double lx = 1.0,
                               double ly = 1.0);
SolutionField fd_poisson_solve(const std::function<double(double, double)>& source, int resolution,
                               double lx = 1.0, double ly = 1.0);

/// Closed-form solution for the pure eigenmode sin(k1 pi x / Lx) sin(k2 pi y / Ly).
SolutionField analytic_eigenmode_solution(int k1, int k2, double lx, double ly,
                                          std::span<const double> xs, std::span<const double> ys);

/// Leading rows x cols block of a field.
SolutionField crop(const SolutionField& field, std::size_t rows, std::size_t cols);

/// Same schema as write_spectrum_csv; imaginary parts are zero.
void write_classical_spectrum_csv(std::ostream& out, const ClassicalSpectrum& spectrum);

}  // namespace qpoisson
