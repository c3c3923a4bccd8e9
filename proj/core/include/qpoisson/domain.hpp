#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpoisson/types.hpp"

namespace qpoisson {

inline constexpr int kDefaultMaxQubitsPerAxis = 12;

/// Rectangle [0, Lx] x [0, Ly] sampled on a 2^n x 2^m half-open grid.
///
/// Nodes are x_i = i * Lx / 2^n for i in [0, 2^n) and likewise for y; the
/// right and top edges are never sampled, so each axis has exactly as many
/// nodes as its register has basis states.
class Grid2D {
 public:
  /// Throws DomainError for nonpositive lengths or qubit counts outside
  /// [1, max_qubits].
  Grid2D(double lx, double ly, int n, int m, int max_qubits = kDefaultMaxQubitsPerAxis);

  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  /// Point counts N = 2^n and M = 2^m.
  std::size_t nx() const noexcept { return std::size_t{1} << n_; }
  std::size_t ny() const noexcept { return std::size_t{1} << m_; }
  std::size_t size() const noexcept { return nx() * ny(); }

  double x(std::size_t i) const noexcept {
    return static_cast<double>(i) * lx_ / static_cast<double>(nx());
  }
  double y(std::size_t j) const noexcept {
    return static_cast<double>(j) * ly_ / static_cast<double>(ny());
  }
  std::vector<double> xs() const;
  std::vector<double> ys() const;

  bool operator==(const Grid2D&) const = default;

 private:
  double lx_;
  double ly_;
  int n_;
  int m_;
};

Grid2D build_grid(double lx, double ly, int n, int m,
                  int max_qubits = kDefaultMaxQubitsPerAxis);

enum class SourceKind {
  Sinusoid,              // sin(k1 pi x) sin(k2 pi y)
  PolynomialBump,        // x(1-x) y(1-y)
  AnisotropicSinusoid,   // sinusoid times (x^2 + 2xy + 3y^2 - x + 4y + 5)
  Gaussian,              // exp(-((x-x0)^2 + (y-y0)^2))
  GaussianPlusSinusoid,  // Gaussian + Sinusoid
};

std::string_view to_string(SourceKind kind) noexcept;
std::optional<SourceKind> parse_source_kind(std::string_view name) noexcept;
bool uses_harmonics(SourceKind kind) noexcept;
bool uses_center(SourceKind kind) noexcept;

struct Harmonics {
  int k1 = 1;
  int k2 = 1;
  bool operator==(const Harmonics&) const = default;
};

struct Center {
  double x0 = 0.5;
  double y0 = 0.5;
  bool operator==(const Center&) const = default;
};

/// One entry of the source catalog. Harmonics are present exactly when the
/// kind has a sinusoidal factor, the center exactly when it has a Gaussian.
class SourceSpec {
 public:
  static SourceSpec sinusoid(int k1, int k2);
  static SourceSpec polynomial_bump();
  static SourceSpec anisotropic_sinusoid(int k1, int k2);
  static SourceSpec gaussian(double x0, double y0);
  static SourceSpec gaussian_plus_sinusoid(int k1, int k2, double x0, double y0);

  /// Builds any kind; missing optional parameters fall back to k=1 and
  /// center (0.5, 0.5). Throws DomainError when a parameter is given for a
  /// kind that does not use it.
  static SourceSpec make(SourceKind kind, std::optional<Harmonics> harmonics,
                         std::optional<Center> center);

  SourceKind kind() const noexcept { return kind_; }
  const std::optional<Harmonics>& harmonics() const noexcept { return harmonics_; }
  const std::optional<Center>& center() const noexcept { return center_; }

  std::string describe() const;

  bool operator==(const SourceSpec&) const = default;

 private:
  SourceSpec(SourceKind kind, std::optional<Harmonics> harmonics, std::optional<Center> center);

  SourceKind kind_;
  std::optional<Harmonics> harmonics_;
  std::optional<Center> center_;
};

double eval_source(const SourceSpec& spec, double x, double y) noexcept;

/// Harmonic shift applied before harmonic retrieval: 0 for m <= 2, m - 2
/// otherwise. Throws DomainError for m < 1.
int harmonic_shift(int m);

/// Replaces each harmonic k with k + harmonic_shift(k); kinds without
/// harmonics are returned unchanged.
SourceSpec with_harmonic_shift(const SourceSpec& spec);

struct SourceField {
  Grid2D grid;
  RealMatrix values;                // N x M samples f(x_i, y_j)
  double norm2 = 0.0;               // sqrt(sum of values^2)
  std::vector<Complex> amplitudes;  // values / norm2, index i * M + j
};

inline constexpr double kZeroSourceTolerance = 1e-12;

/// Throws ZeroSourceError when every node value is within
/// kZeroSourceTolerance of zero.
SourceField sample_source(const SourceSpec& spec, const Grid2D& grid);

/// CSV with header `x,y,f`, x-major.
void write_source_csv(std::ostream& out, const SourceField& field);

}  // namespace qpoisson
