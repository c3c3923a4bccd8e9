#include "qpoisson/domain.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "format.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson {

Grid2D::Grid2D(double lx, double ly, int n, int m, int max_qubits)
    : lx_(lx), ly_(ly), n_(n), m_(m) {
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw DomainError("domain lengths must be positive and finite");
  }
  if (n < 1 || n > max_qubits || m < 1 || m > max_qubits) {
    std::ostringstream msg;
    msg << "qubit counts (" << n << ", " << m << ") outside [1, " << max_qubits << "]";
    throw DomainError(msg.str());
  }
}

std::vector<double> Grid2D::xs() const {
  std::vector<double> out(nx());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(i);
  return out;
}

std::vector<double> Grid2D::ys() const {
  std::vector<double> out(ny());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = y(j);
  return out;
}

Grid2D build_grid(double lx, double ly, int n, int m, int max_qubits) {
  return Grid2D(lx, ly, n, m, max_qubits);
}

namespace {

constexpr std::pair<SourceKind, std::string_view> kSourceNames[] = {
    {SourceKind::Sinusoid, "sinusoid"},
    {SourceKind::PolynomialBump, "polynomial-bump"},
    {SourceKind::AnisotropicSinusoid, "anisotropic-sinusoid"},
    {SourceKind::Gaussian, "gaussian"},
    {SourceKind::GaussianPlusSinusoid, "gaussian-plus-sinusoid"},
};

void check_harmonics(const Harmonics& h) {
  if (h.k1 < 1 || h.k2 < 1) throw DomainError("harmonics k1, k2 must be >= 1");
}

void check_center(const Center& c) {
  if (!std::isfinite(c.x0) || !std::isfinite(c.y0)) throw DomainError("center must be finite");
}

}  // namespace

std::string_view to_string(SourceKind kind) noexcept {
  for (const auto& [k, name] : kSourceNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kSourceNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool uses_harmonics(SourceKind kind) noexcept {
  return kind == SourceKind::Sinusoid || kind == SourceKind::AnisotropicSinusoid ||
         kind == SourceKind::GaussianPlusSinusoid;
}

bool uses_center(SourceKind kind) noexcept {
  return kind == SourceKind::Gaussian || kind == SourceKind::GaussianPlusSinusoid;
}

SourceSpec::SourceSpec(SourceKind kind, std::optional<Harmonics> harmonics,
                       std::optional<Center> center)
    : kind_(kind), harmonics_(harmonics), center_(center) {}

SourceSpec SourceSpec::make(SourceKind kind, std::optional<Harmonics> harmonics,
                            std::optional<Center> center) {
  if (harmonics && !uses_harmonics(kind)) {
    throw DomainError(std::string("source '") + std::string(to_string(kind)) +
                      "' takes no harmonics");
  }
  if (center && !uses_center(kind)) {
    throw DomainError(std::string("source '") + std::string(to_string(kind)) +
                      "' takes no center");
  }
  if (uses_harmonics(kind)) {
    if (!harmonics) harmonics = Harmonics{};
    check_harmonics(*harmonics);
  }
  if (uses_center(kind)) {
    if (!center) center = Center{};
    check_center(*center);
  }
  return SourceSpec(kind, harmonics, center);
}

SourceSpec SourceSpec::sinusoid(int k1, int k2) {
  return make(SourceKind::Sinusoid, Harmonics{k1, k2}, std::nullopt);
}

SourceSpec SourceSpec::polynomial_bump() {
  return make(SourceKind::PolynomialBump, std::nullopt, std::nullopt);
}

SourceSpec SourceSpec::anisotropic_sinusoid(int k1, int k2) {
  return make(SourceKind::AnisotropicSinusoid, Harmonics{k1, k2}, std::nullopt);
}

SourceSpec SourceSpec::gaussian(double x0, double y0) {
  return make(SourceKind::Gaussian, std::nullopt, Center{x0, y0});
}

SourceSpec SourceSpec::gaussian_plus_sinusoid(int k1, int k2, double x0, double y0) {
  return make(SourceKind::GaussianPlusSinusoid, Harmonics{k1, k2}, Center{x0, y0});
}

std::string SourceSpec::describe() const {
  std::ostringstream out;
  out << to_string(kind_);
  if (harmonics_) out << " k1=" << harmonics_->k1 << " k2=" << harmonics_->k2;
  if (center_) {
    out << " x0=" << detail::format_double(center_->x0)
        << " y0=" << detail::format_double(center_->y0);
  }
  return out.str();
}

double eval_source(const SourceSpec& spec, double x, double y) noexcept {
  using std::numbers::pi;
  const auto sinusoid = [&] {
    const auto& h = *spec.harmonics();
    return std::sin(h.k1 * pi * x) * std::sin(h.k2 * pi * y);
  };
  const auto gaussian = [&] {
    const auto& c = *spec.center();
    const double dx = x - c.x0;
    const double dy = y - c.y0;
    return std::exp(-(dx * dx + dy * dy));
  };

  switch (spec.kind()) {
    case SourceKind::Sinusoid:
      return sinusoid();
    case SourceKind::PolynomialBump:
      return x * (1.0 - x) * y * (1.0 - y);
    case SourceKind::AnisotropicSinusoid:
      return sinusoid() * (x * x + 2.0 * x * y + 3.0 * y * y - x + 4.0 * y + 5.0);
    case SourceKind::Gaussian:
      return gaussian();
    case SourceKind::GaussianPlusSinusoid:
      return gaussian() + sinusoid();
  }
  return 0.0;
}

int harmonic_shift(int m) {
  if (m < 1) throw DomainError("harmonic index must be >= 1");
  return m <= 2 ? 0 : m - 2;
}

SourceSpec with_harmonic_shift(const SourceSpec& spec) {
  if (!spec.harmonics()) return spec;
  const auto& h = *spec.harmonics();
  const Harmonics shifted{h.k1 + harmonic_shift(h.k1), h.k2 + harmonic_shift(h.k2)};
  return SourceSpec::make(spec.kind(), shifted, spec.center());
}

SourceField sample_source(const SourceSpec& spec, const Grid2D& grid) {
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();

  RealMatrix values(nx, ny);
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = grid.x(i);
    for (std::size_t j = 0; j < ny; ++j) values(i, j) = eval_source(spec, x, grid.y(j));
  }

  double sum_sq = 0.0;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double v = values.data()[idx];
    sum_sq += v * v;
  }
  const double norm2 = std::sqrt(sum_sq);
  // Catalog sources are O(1); node values this small are rounding residue of
  // a sine sampled exactly at its zeros.
  if (!(values.cwiseAbs().maxCoeff() > kZeroSourceTolerance)) {
    throw ZeroSourceError("source '" + spec.describe() + "' vanishes at every grid node");
  }

  std::vector<Complex> amplitudes(grid.size());
  for (std::size_t idx = 0; idx < amplitudes.size(); ++idx) {
    amplitudes[idx] = Complex(values.data()[idx] / norm2, 0.0);
  }
  return SourceField{grid, std::move(values), norm2, std::move(amplitudes)};
}

void write_source_csv(std::ostream& out, const SourceField& field) {
  out << "x,y,f\n";
  for (std::size_t i = 0; i < field.grid.nx(); ++i) {
    const std::string x = detail::format_double(field.grid.x(i));
    for (std::size_t j = 0; j < field.grid.ny(); ++j) {
      out << x << ',' << detail::format_double(field.grid.y(j)) << ','
          << detail::format_double(field.values(i, j)) << '\n';
    }
  }
}

}  // namespace qpoisson
