#include "qpoisson/classical.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include <unsupported/Eigen/FFT>

#include "format.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson {

using std::numbers::pi;

namespace {

constexpr std::pair<QuadratureRule, std::string_view> kRuleNames[] = {
    {QuadratureRule::Trapezoid, "trapezoid"},
    {QuadratureRule::Simpson, "simpson"},
};

void composite_nodes(QuadratureRule rule, int subdivisions, double length,
                     std::vector<double>& nodes, std::vector<double>& weights) {
  const auto count = static_cast<std::size_t>(subdivisions) + 1;
  const double h = length / subdivisions;
  nodes.resize(count);
  weights.resize(count);
  for (std::size_t q = 0; q < count; ++q) {
    nodes[q] = static_cast<double>(q) * h;
    if (rule == QuadratureRule::Trapezoid) {
      weights[q] = (q == 0 || q + 1 == count) ? h / 2.0 : h;
    } else {
      const double c = (q == 0 || q + 1 == count) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
      weights[q] = c * h / 3.0;
    }
  }
}

Eigen::VectorXd weighted_mode(const std::vector<double>& nodes, const std::vector<double>& weights,
                              int k, double length) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    v(static_cast<Eigen::Index>(q)) = weights[q] * std::sin(k * pi * nodes[q] / length);
  }
  return v;
}

// S_p = sum_{i=1}^{L} v_i sin(pi p i / (L + 1)), p = 1..L, through the odd
// extension of length 2(L + 1).
std::vector<double> dst1(Eigen::FFT<double>& fft, const std::vector<double>& v) {
  const std::size_t len = v.size();
  const std::size_t period = 2 * (len + 1);
  std::vector<double> extended(period, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    extended[i + 1] = v[i];
    extended[period - 1 - i] = -v[i];
  }
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, extended);
  std::vector<double> out(len);
  for (std::size_t p = 0; p < len; ++p) out[p] = -spectrum[p + 1].imag() / 2.0;
  return out;
}

}  // namespace

std::string_view to_string(QuadratureRule rule) noexcept {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

std::optional<QuadratureRule> parse_quadrature_rule(std::string_view name) noexcept {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  return std::nullopt;
}

void QuadratureSpec::validate() const {
  if (subdivisions_x < kMinSubdivisions || subdivisions_y < kMinSubdivisions) {
    throw QuadratureError("quadrature needs at least " + std::to_string(kMinSubdivisions) +
                          " subdivisions per axis");
  }
  if (rule == QuadratureRule::Simpson && (subdivisions_x % 2 != 0 || subdivisions_y % 2 != 0)) {
    throw QuadratureError("Simpson's rule needs even subdivision counts");
  }
}

SourceTable tabulate_source(const SourceSpec& spec, const Grid2D& grid, const QuadratureSpec& quad) {
  quad.validate();
  SourceTable table;
  table.lx = grid.lx();
  table.ly = grid.ly();
  composite_nodes(quad.rule, quad.subdivisions_x, grid.lx(), table.xs, table.wx);
  composite_nodes(quad.rule, quad.subdivisions_y, grid.ly(), table.ys, table.wy);
  table.values.resize(static_cast<Eigen::Index>(table.xs.size()),
                      static_cast<Eigen::Index>(table.ys.size()));
  for (std::size_t r = 0; r < table.xs.size(); ++r) {
    for (std::size_t s = 0; s < table.ys.size(); ++s) {
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
          eval_source(spec, table.xs[r], table.ys[s]);
    }
  }
  return table;
}

double quadrature_coefficient(const SourceTable& table, int kx, int ky) {
  if (kx < 1 || ky < 1) throw QuadratureError("mode indices must be >= 1");
  const Eigen::VectorXd ax = weighted_mode(table.xs, table.wx, kx, table.lx);
  const Eigen::VectorXd ay = weighted_mode(table.ys, table.wy, ky, table.ly);
  const Eigen::VectorXd inner = table.values * ay;
  return 4.0 / (table.lx * table.ly) * ax.dot(inner);
}

double quadrature_coefficient(const SourceSpec& spec, int kx, int ky, const Grid2D& grid,
                              const QuadratureSpec& quad) {
  return quadrature_coefficient(tabulate_source(spec, grid, quad), kx, ky);
}

ClassicalSpectrum quadrature_spectrum(const SourceTable& table, const Grid2D& grid,
                                      ModeCount modes, bool parallel) {
  if (modes.kx < 1 || modes.kx > grid.nx() || modes.ky < 1 || modes.ky > grid.ny()) {
    std::ostringstream msg;
    msg << "mode count (" << modes.kx << ", " << modes.ky << ") outside [1, " << grid.nx()
        << "] x [1, " << grid.ny() << "]";
    throw DomainError(msg.str());
  }
  const auto kx = static_cast<Eigen::Index>(modes.kx);
  const auto ky = static_cast<Eigen::Index>(modes.ky);
  RealMatrix a(kx, ky);
  const RealMatrix lambda = laplacian_eigenvalues(grid).topLeftCorner(kx, ky);

  const Eigen::Index pairs = kx * ky;
#pragma omp parallel for if (parallel) schedule(dynamic, 16)
  for (Eigen::Index idx = 0; idx < pairs; ++idx) {
    const Eigen::Index p = idx / ky;
    const Eigen::Index q = idx % ky;
    a(p, q) = quadrature_coefficient(table, static_cast<int>(p) + 1, static_cast<int>(q) + 1);
  }
  return ClassicalSpectrum{grid, std::move(a), lambda};
}

SolutionField reconstruct_classical(const ClassicalSpectrum& spectrum, std::span<const double> xs,
                                    std::span<const double> ys, bool parallel) {
  const RealMatrix weights = -(spectrum.a.array() / spectrum.eigenvalues.array()).matrix();
  SolutionField field;
  field.xs.assign(xs.begin(), xs.end());
  field.ys.assign(ys.begin(), ys.end());
  field.values = evaluate_sine_series(weights, spectrum.grid.lx(), spectrum.grid.ly(), xs, ys,
                                      parallel);
  field.truncation = {static_cast<std::size_t>(spectrum.a.rows()),
                      static_cast<std::size_t>(spectrum.a.cols())};
  field.meta.method = "classical-quadrature";
  return field;
}

SolutionField classical_solve(const SourceSpec& spec, const Grid2D& grid, const QuadratureSpec& quad,
                              ModeCount modes, bool parallel) {
  const SourceTable table = tabulate_source(spec, grid, quad);
  const ClassicalSpectrum spectrum = quadrature_spectrum(table, grid, modes, parallel);
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();
  SolutionField field = reconstruct_classical(spectrum, xs, ys, parallel);
  field.meta.source = spec;
  return field;
}

RealMatrix dst_coefficients(const SourceField& field) {
  const std::size_t nx = field.grid.nx();
  const std::size_t ny = field.grid.ny();
  const auto rows = static_cast<Eigen::Index>(nx - 1);
  const auto cols = static_cast<Eigen::Index>(ny - 1);
  RealMatrix out(rows, cols);
  if (rows == 0 || cols == 0) return out;

  Eigen::FFT<double> fft;
  // Along y for each interior row.
  RealMatrix partial(rows, cols);
  std::vector<double> line(static_cast<std::size_t>(cols));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) line[j] = field.values(i + 1, j + 1);
    const std::vector<double> s = dst1(fft, line);
    for (Eigen::Index q = 0; q < cols; ++q) partial(i, q) = s[q];
  }
  // Along x for each mode column.
  line.resize(static_cast<std::size_t>(rows));
  const double scale = 4.0 / static_cast<double>(nx * ny);
  for (Eigen::Index q = 0; q < cols; ++q) {
    for (Eigen::Index i = 0; i < rows; ++i) line[i] = partial(i, q);
    const std::vector<double> s = dst1(fft, line);
    for (Eigen::Index p = 0; p < rows; ++p) out(p, q) = scale * s[p];
  }
  return out;
}

SolutionField dst_solve(const SourceField& field, ModeCount modes) {
  const Grid2D& grid = field.grid;
  if (modes.kx < 1 || modes.kx >= grid.nx() || modes.ky < 1 || modes.ky >= grid.ny()) {
    std::ostringstream msg;
    msg << "DST mode count (" << modes.kx << ", " << modes.ky << ") outside [1, "
        << grid.nx() - 1 << "] x [1, " << grid.ny() - 1 << "]";
    throw DomainError(msg.str());
  }
  const auto kx = static_cast<Eigen::Index>(modes.kx);
  const auto ky = static_cast<Eigen::Index>(modes.ky);
  ClassicalSpectrum spectrum{grid, dst_coefficients(field).topLeftCorner(kx, ky),
                             laplacian_eigenvalues(grid).topLeftCorner(kx, ky)};
  const std::vector<double> xs = grid.xs();
  const std::vector<double> ys = grid.ys();
  SolutionField out = reconstruct_classical(spectrum, xs, ys);
  out.meta.method = "classical-dst";
  return out;
}

SolutionField analytic_eigenmode_solution(int k1, int k2, double lx, double ly,
                                          std::span<const double> xs, std::span<const double> ys) {
  const double wx = k1 * pi / lx;
  const double wy = k2 * pi / ly;
  const double lambda = wx * wx + wy * wy;
  SolutionField field;
  field.xs.assign(xs.begin(), xs.end());
  field.ys.assign(ys.begin(), ys.end());
  field.values.resize(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
  for (std::size_t r = 0; r < xs.size(); ++r) {
    for (std::size_t s = 0; s < ys.size(); ++s) {
      field.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) =
          -std::sin(wx * xs[r]) * std::sin(wy * ys[s]) / lambda;
    }
  }
  field.meta.method = "analytic";
  field.meta.source = SourceSpec::sinusoid(k1, k2);
  return field;
}

SolutionField crop(const SolutionField& field, std::size_t rows, std::size_t cols) {
  if (rows > field.xs.size() || cols > field.ys.size()) {
    throw GridMismatchError("crop larger than the field");
  }
  SolutionField out = field;
  out.xs.resize(rows);
  out.ys.resize(cols);
  out.values = field.values.topLeftCorner(static_cast<Eigen::Index>(rows),
                                          static_cast<Eigen::Index>(cols));
  return out;
}

void write_classical_spectrum_csv(std::ostream& out, const ClassicalSpectrum& spectrum) {
  using detail::format_double;
  out << "i,j,re_a,im_a,lambda,re_b,im_b\n";
  for (Eigen::Index i = 0; i < spectrum.a.rows(); ++i) {
    for (Eigen::Index j = 0; j < spectrum.a.cols(); ++j) {
      const double a = spectrum.a(i, j);
      const double lambda = spectrum.eigenvalues(i, j);
      out << i << ',' << j << ',' << format_double(a) << ",0," << format_double(lambda) << ','
          << format_double(a / lambda) << ",0\n";
    }
  }
}

}  // namespace qpoisson
