#include "qpoisson/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <utility>

#include "format.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson {

using std::numbers::pi;

namespace {

constexpr std::pair<CorrectionKind, std::string_view> kCorrectionNames[] = {
    {CorrectionKind::Identity, "identity"},
    {CorrectionKind::SinusoidProfile, "sinusoid"},
    {CorrectionKind::AnisotropicProfile, "anisotropic"},
    {CorrectionKind::GaussianProfile, "gaussian"},
    {CorrectionKind::MixedProfile, "mixed"},
};

constexpr std::pair<SignConvention, std::string_view> kSignNames[] = {
    {SignConvention::Poisson, "poisson"},
    {SignConvention::Literal, "literal"},
};

void require_shape(const ComplexMatrix& a, const Grid2D& grid, const char* what) {
  if (static_cast<std::size_t>(a.rows()) != grid.nx() ||
      static_cast<std::size_t>(a.cols()) != grid.ny()) {
    std::ostringstream msg;
    msg << what << " is " << a.rows() << "x" << a.cols() << ", grid is " << grid.nx() << "x"
        << grid.ny();
    throw DomainError(msg.str());
  }
}

}  // namespace

std::string_view to_string(CorrectionKind kind) noexcept {
  for (const auto& [k, name] : kCorrectionNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<CorrectionKind> parse_correction_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kCorrectionNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

CorrectionKind default_correction_for(SourceKind kind) noexcept {
  switch (kind) {
    case SourceKind::Sinusoid:
    case SourceKind::PolynomialBump:
      return CorrectionKind::SinusoidProfile;
    case SourceKind::AnisotropicSinusoid:
      return CorrectionKind::AnisotropicProfile;
    case SourceKind::Gaussian:
      return CorrectionKind::GaussianProfile;
    case SourceKind::GaussianPlusSinusoid:
      return CorrectionKind::MixedProfile;
  }
  return CorrectionKind::Identity;
}

Complex correction_multiplier(CorrectionKind kind, int p, int q) {
  const double dp = p;
  const double dq = q;
  const double pq = dp * dq;
  const auto phase = [](double turns_of_pi) { return std::polar(1.0, -pi * turns_of_pi); };

  switch (kind) {
    case CorrectionKind::Identity:
      return 1.0;
    case CorrectionKind::SinusoidProfile:
      return phase((dp + dq) / 2.0) * (pq * pq / std::pow(dp + dq, 3));
    case CorrectionKind::AnisotropicProfile:
      return phase(dp + dq) * (pq * pq / std::pow(dp + dq, 3));
    case CorrectionKind::GaussianProfile:
      return phase(pq / 2.0);
    case CorrectionKind::MixedProfile:
      return phase(pq) * (pq * pq / std::pow(dp * dp + dq * dq, 1.5));
  }
  return 1.0;
}

ComplexMatrix counts_to_coefficients(const CountsMap& counts, const Grid2D& grid) {
  ComplexMatrix a = ComplexMatrix::Zero(grid.nx(), grid.ny());
  std::uint64_t total = 0;
  for (const auto& [outcome, count] : counts.counts) total += count;
  if (total == 0) throw DomainError("counts hold no shots");

  const double denom = static_cast<double>(total);
  for (const auto& [outcome, count] : counts.counts) {
    if (outcome.k >= grid.nx() || outcome.l >= grid.ny()) {
      throw DomainError("outcome (" + std::to_string(outcome.k) + ", " +
                        std::to_string(outcome.l) + ") outside the grid");
    }
    a(outcome.k, outcome.l) = std::sqrt(static_cast<double>(count) / denom);
  }
  return a;
}

ComplexMatrix amplitudes_to_coefficients(const QuantumState& state) {
  ComplexMatrix a(state.dim_x(), state.dim_y());
  const auto amps = state.amplitudes();
  std::copy(amps.begin(), amps.end(), a.data());
  return a;
}

ComplexMatrix apply_correction(const ComplexMatrix& a, CorrectionKind kind) {
  if (kind == CorrectionKind::Identity) return a;
  ComplexMatrix out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) * correction_multiplier(kind, static_cast<int>(i) + 1,
                                                  static_cast<int>(j) + 1);
    }
  }
  return out;
}

ComplexMatrix isolate_dominant_mode(const ComplexMatrix& a) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
  if (a.size() == 0) return out;
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
    const double v = std::abs(a.data()[idx]);
    if (v > best_abs) {
      best_abs = v;
      best = idx;
    }
  }
  if (best_abs > 0.0) out.data()[best] = a.data()[best] / best_abs;
  return out;
}

RealMatrix laplacian_eigenvalues(const Grid2D& grid) {
  RealMatrix lambda(grid.nx(), grid.ny());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double kx = pi * static_cast<double>(i + 1) / grid.lx();
    for (std::size_t j = 0; j < grid.ny(); ++j) {
      const double ky = pi * static_cast<double>(j + 1) / grid.ly();
      lambda(i, j) = kx * kx + ky * ky;
    }
  }
  return lambda;
}

std::string describe(const Provenance& provenance) {
  if (const auto* s = std::get_if<SampledProvenance>(&provenance)) {
    return "sampled shots=" + std::to_string(s->shots) + " seed=" + std::to_string(s->seed);
  }
  return "exact";
}

double restore_amplitude_scale(const ComplexMatrix& corrected, const Grid2D& grid,
                               double source_norm) {
  const auto rows = std::min<Eigen::Index>(corrected.rows(), static_cast<Eigen::Index>(grid.nx()) - 1);
  const auto cols = std::min<Eigen::Index>(corrected.cols(), static_cast<Eigen::Index>(grid.ny()) - 1);
  double sum_sq = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = corrected(i, j).real();
      sum_sq += re * re;
    }
  }
  if (sum_sq == 0.0) return 0.0;
  const double mode_norm = std::sqrt(static_cast<double>(grid.size())) / 2.0;
  return source_norm / (mode_norm * std::sqrt(sum_sq));
}

SpectrumEstimate estimate_spectrum(const Grid2D& grid, ComplexMatrix a, CorrectionKind correction,
                                   double source_norm, Provenance provenance) {
  require_shape(a, grid, "coefficient matrix");
  const double energy = a.squaredNorm();
  if (!(std::abs(energy - 1.0) <= 1e-10)) {
    std::ostringstream msg;
    msg << "coefficients have sum |a|^2 = " << energy << ", expected 1";
    throw NormalizationError(msg.str());
  }

  ComplexMatrix corrected = apply_correction(a, correction);
  RealMatrix eigenvalues = laplacian_eigenvalues(grid);
  ComplexMatrix b = corrected.array() / eigenvalues.cast<Complex>().array();
  const double scale = restore_amplitude_scale(corrected, grid, source_norm);

  return SpectrumEstimate{grid,
                          std::move(a),
                          std::move(corrected),
                          std::move(eigenvalues),
                          std::move(b),
                          scale,
                          correction,
                          std::move(provenance)};
}

std::string_view to_string(SignConvention sign) noexcept {
  for (const auto& [s, name] : kSignNames) {
    if (s == sign) return name;
  }
  return "unknown";
}

std::optional<SignConvention> parse_sign_convention(std::string_view name) noexcept {
  for (const auto& [s, n] : kSignNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

namespace {

// sin(pi t) with exact zeros at integer t; fmod is exact, so the boundary
// rows of every basis function come out as 0 rather than rounding residue.
double sin_pi(double t) {
  const double r = std::fmod(t, 2.0);
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  return std::sin(pi * r);
}

}  // namespace

RealMatrix evaluate_sine_series(const RealMatrix& coefficients, double lx, double ly,
                                std::span<const double> xs, std::span<const double> ys,
                                bool parallel) {
  const Eigen::Index tx = coefficients.rows();
  const Eigen::Index ty = coefficients.cols();
  const auto nxs = static_cast<Eigen::Index>(xs.size());
  const auto nys = static_cast<Eigen::Index>(ys.size());

  // Sy(s, q) = sin((q+1) pi y_s / Ly), stored transposed for the row products.
  RealMatrix sy_t(ty, nys);
  for (Eigen::Index q = 0; q < ty; ++q) {
    for (Eigen::Index s = 0; s < nys; ++s) {
      sy_t(q, s) = sin_pi(static_cast<double>(q + 1) * (ys[s] / ly));
    }
  }

  RealMatrix u(nxs, nys);
#pragma omp parallel for if (parallel) schedule(static)
  for (Eigen::Index r = 0; r < nxs; ++r) {
    Eigen::RowVectorXd sx(tx);
    for (Eigen::Index p = 0; p < tx; ++p) {
      sx(p) = sin_pi(static_cast<double>(p + 1) * (xs[r] / lx));
    }
    const Eigen::RowVectorXd weights = sx * coefficients;
    u.row(r).noalias() = weights * sy_t;
  }
  return u;
}

SolutionField reconstruct(const SpectrumEstimate& estimate, std::span<const double> xs,
                          std::span<const double> ys, Truncation truncation, SignConvention sign,
                          bool parallel) {
  const Grid2D& grid = estimate.grid;
  if (truncation.tx < 1 || truncation.tx > grid.nx() || truncation.ty < 1 ||
      truncation.ty > grid.ny()) {
    std::ostringstream msg;
    msg << "truncation (" << truncation.tx << ", " << truncation.ty << ") outside [1, "
        << grid.nx() << "] x [1, " << grid.ny() << "]";
    throw TruncationError(msg.str());
  }

  const double s = sign == SignConvention::Poisson ? -1.0 : 1.0;
  const auto tx = static_cast<Eigen::Index>(truncation.tx);
  const auto ty = static_cast<Eigen::Index>(truncation.ty);
  const RealMatrix weights =
      (s * estimate.amplitude_scale) * estimate.b.topLeftCorner(tx, ty).real();

  SolutionField field;
  field.xs.assign(xs.begin(), xs.end());
  field.ys.assign(ys.begin(), ys.end());
  field.values = evaluate_sine_series(weights, grid.lx(), grid.ly(), xs, ys, parallel);
  field.truncation = truncation;
  field.meta.method = "quantum";
  field.meta.correction = estimate.correction;
  field.meta.provenance = estimate.provenance;
  field.meta.sign = sign;
  return field;
}

SolutionField reconstruct_on_grid(const SpectrumEstimate& estimate,
                                  std::optional<Truncation> truncation, SignConvention sign,
                                  bool parallel) {
  const std::vector<double> xs = estimate.grid.xs();
  const std::vector<double> ys = estimate.grid.ys();
  return reconstruct(estimate, xs, ys,
                     truncation.value_or(Truncation{estimate.grid.nx(), estimate.grid.ny()}), sign,
                     parallel);
}

double mse(const SolutionField& u, const SolutionField& v) {
  const auto same_axis = [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
  };
  if (!same_axis(u.xs, v.xs) || !same_axis(u.ys, v.ys)) {
    std::ostringstream msg;
    msg << "evaluation grids differ (" << u.xs.size() << "x" << u.ys.size() << " vs "
        << v.xs.size() << "x" << v.ys.size() << ")";
    throw GridMismatchError(msg.str());
  }
  if (u.values.size() == 0) return 0.0;
  return (u.values - v.values).squaredNorm() / static_cast<double>(u.values.size());
}

void write_spectrum_csv(std::ostream& out, const SpectrumEstimate& estimate) {
  using detail::format_double;
  out << "i,j,re_a,im_a,lambda,re_b,im_b\n";
  for (Eigen::Index i = 0; i < estimate.a.rows(); ++i) {
    for (Eigen::Index j = 0; j < estimate.a.cols(); ++j) {
      out << i << ',' << j << ',' << format_double(estimate.a(i, j).real()) << ','
          << format_double(estimate.a(i, j).imag()) << ','
          << format_double(estimate.eigenvalues(i, j)) << ','
          << format_double(estimate.b(i, j).real()) << ','
          << format_double(estimate.b(i, j).imag()) << '\n';
    }
  }
}

void write_solution_csv(std::ostream& out, const SolutionField& field) {
  using detail::format_double;
  out << "x,y,u\n";
  for (std::size_t r = 0; r < field.xs.size(); ++r) {
    const std::string x = format_double(field.xs[r]);
    for (std::size_t s = 0; s < field.ys.size(); ++s) {
      out << x << ',' << format_double(field.ys[s]) << ','
          << format_double(field.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)))
          << '\n';
    }
  }
}

void write_solution_gnuplot(std::ostream& out, const SolutionField& field) {
  using detail::format_double;
  out << field.ys.size();
  for (double y : field.ys) out << ' ' << format_double(y);
  out << '\n';
  for (std::size_t r = 0; r < field.xs.size(); ++r) {
    out << format_double(field.xs[r]);
    for (std::size_t s = 0; s < field.ys.size(); ++s) {
      out << ' '
          << format_double(field.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)));
    }
    out << '\n';
  }
}

}  // namespace qpoisson
