#pragma once

#include <complex>

#include <Eigen/Core>

namespace qpoisson {

using Complex = std::complex<double>;

// Row-major so that element (i, j) sits at i * cols + j, the x-major
// flattening used for amplitude vectors.
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace qpoisson
