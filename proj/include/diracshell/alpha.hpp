#pragma once

#include <array>

#include "diracshell/types.hpp"

namespace diracshell {

// Dirac matrices alpha_1..alpha_n and alpha_0 (the mass matrix).
struct AlphaSet {
  int dimension = 0;
  int spinor_size = 0;
  std::array<MatrixXcd, 3> alpha;  // only the first `dimension` entries are set
  MatrixXcd alpha0;
};

// n = 2: Pauli matrices sigma_1, sigma_2, sigma_3.
// n = 3: alpha_k = [[0, sigma_k], [sigma_k, 0]], alpha_0 = diag(I_2, -I_2).
AlphaSet alpha_matrices(int n);

// alpha . v for a displacement v (first Dim components used).
template <int Dim>
typename Spinor<Dim>::Matrix alpha_dot(const Point& v) {
  typename Spinor<Dim>::Matrix a;
  const cplx i(0, 1);
  if constexpr (Dim == 2) {
    a << 0, v(0) - i * v(1), v(0) + i * v(1), 0;
  } else {
    const cplx p = v(0) - i * v(1), q = v(0) + i * v(1);
    a.setZero();
    a(0, 2) = v(2);  a(0, 3) = p;
    a(1, 2) = q;     a(1, 3) = -v(2);
    a(2, 0) = v(2);  a(2, 1) = p;
    a(3, 0) = q;     a(3, 1) = -v(2);
  }
  return a;
}

}  // namespace diracshell
