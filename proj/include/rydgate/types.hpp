#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace rydgate {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar>;

using RMatrix = Matrix<Real>;
using CMatrix = Matrix<Complex>;
using CVector = Vector<Complex>;
using RVector = Vector<Real>;
using CSparse = SparseMatrix<Complex>;

// Columns are independent states; row-major so a sparse row times the block
// touches contiguous memory.
using StateBlock = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr Real kPi = 3.14159265358979323846;

}  // namespace rydgate
