#include "diracshell/alpha.hpp"

namespace diracshell {

namespace {

MatrixXcd pauli(int k) {
  const cplx i(0, 1);
  MatrixXcd s(2, 2);
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

AlphaSet alpha_matrices(int n) {
  if (n != 2 && n != 3)
    throw InvalidInput("alpha_matrices: unsupported dimension " + std::to_string(n));
  AlphaSet a;
  a.dimension = n;
  a.spinor_size = spinor_size(n);
  if (n == 2) {
    a.alpha[0] = pauli(1);
    a.alpha[1] = pauli(2);
    a.alpha0 = pauli(3);
    return a;
  }
  for (int k = 0; k < 3; ++k) {
    MatrixXcd m = MatrixXcd::Zero(4, 4);
    m.topRightCorner(2, 2) = pauli(k + 1);
    m.bottomLeftCorner(2, 2) = pauli(k + 1);
    a.alpha[k] = m;
  }
  a.alpha0 = MatrixXcd::Zero(4, 4);
  a.alpha0.topLeftCorner(2, 2).setIdentity();
  a.alpha0.bottomRightCorner(2, 2) = -MatrixXcd::Identity(2, 2);
  return a;
}

}  // namespace diracshell
