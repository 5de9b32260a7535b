#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace diracshell {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Points live in R^3 throughout; planar problems leave the last coordinate at zero.
using Point = Eigen::Vector3d;

// Fixed-size spinor algebra for dimension Dim (N = 2 in the plane, N = 4 in space).
template <int Dim>
struct Spinor {
  static_assert(Dim == 2 || Dim == 3, "only n = 2, 3 are supported");
  static constexpr int N = Dim == 2 ? 2 : 4;
  using Matrix = Eigen::Matrix<cplx, N, N>;
  using Vector = Eigen::Matrix<cplx, N, 1>;
  // at most N columns, stored inline
  using Block = Eigen::Matrix<cplx, N, Eigen::Dynamic, Eigen::ColMajor, N, N>;
};

inline int spinor_size(int dim) { return dim == 2 ? 2 : 4; }

// Input that cannot be processed (bad dimension, invalid geometry, malformed config).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computation that ran but could not reach its accuracy target.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace diracshell
