#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "qpoisson/classical.hpp"
#include "qpoisson/errors.hpp"

namespace qpoisson {

SolutionField fd_poisson_solve(const std::function<double(double, double)>& source, int resolution,
                               double lx, double ly) {
  if (resolution < 16) throw DomainError("finite-difference resolution must be >= 16");
  if (!(lx > 0.0) || !(ly > 0.0)) throw DomainError("domain lengths must be positive");

  const int interior = resolution - 1;
  const double hx = lx / resolution;
  const double hy = ly / resolution;
  const double cx = 1.0 / (hx * hx);
  const double cy = 1.0 / (hy * hy);
  const auto unknown = [interior](int i, int j) { return (i - 1) * interior + (j - 1); };

  // -Laplacian is symmetric positive definite; solve (-L) u = -f.
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(interior) * interior * 5);
  Eigen::VectorXd rhs(interior * interior);
  double f_max = 0.0;
  for (int i = 1; i < resolution; ++i) {
    for (int j = 1; j < resolution; ++j) {
      const int row = unknown(i, j);
      entries.emplace_back(row, row, 2.0 * cx + 2.0 * cy);
      if (i > 1) entries.emplace_back(row, unknown(i - 1, j), -cx);
      if (i < interior) entries.emplace_back(row, unknown(i + 1, j), -cx);
      if (j > 1) entries.emplace_back(row, unknown(i, j - 1), -cy);
      if (j < interior) entries.emplace_back(row, unknown(i, j + 1), -cy);
      const double f = source(i * hx, j * hy);
      f_max = std::max(f_max, std::abs(f));
      rhs(row) = -f;
    }
  }
  Eigen::SparseMatrix<double> op(interior * interior, interior * interior);
  op.setFromTriplets(entries.begin(), entries.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(op);
  if (solver.info() != Eigen::Success) throw ConvergenceError("factorization failed");
  const Eigen::VectorXd u = solver.solve(rhs);
  const double residual = (op * u - rhs).lpNorm<Eigen::Infinity>();
  if (solver.info() != Eigen::Success || !(residual <= 1e-10 * std::max(1.0, f_max))) {
    throw ConvergenceError("finite-difference residual " + std::to_string(residual) +
                           " above tolerance");
  }

  SolutionField field;
  field.xs.resize(static_cast<std::size_t>(resolution) + 1);
  field.ys.resize(static_cast<std::size_t>(resolution) + 1);
  for (int i = 0; i <= resolution; ++i) {
    field.xs[static_cast<std::size_t>(i)] = i * lx / resolution;
    field.ys[static_cast<std::size_t>(i)] = i * ly / resolution;
  }
  field.values = RealMatrix::Zero(resolution + 1, resolution + 1);
  for (int i = 1; i < resolution; ++i) {
    for (int j = 1; j < resolution; ++j) field.values(i, j) = u(unknown(i, j));
  }
  field.truncation = {static_cast<std::size_t>(resolution), static_cast<std::size_t>(resolution)};
  field.meta.method = "finite-difference";
  return field;
}

SolutionField fd_poisson_solve(const SourceSpec& spec, int resolution, double lx, double ly) {
  SolutionField field = fd_poisson_solve(
      [&spec](double x, double y) { return eval_source(spec, x, y); }, resolution, lx, ly);
  field.meta.source = spec;
  return field;
}

}  // namespace qpoisson
