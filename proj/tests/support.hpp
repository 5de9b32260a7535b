#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>

#include "diracshell/approx.hpp"

namespace testing_support {

using namespace diracshell;

inline MatrixField constant_field(const MatrixXcd& M) { return {M, {}}; }

// F = I, G = tau I on a circle or sphere
inline CouplingSpec scalar_coupling(int dim, double tau) {
  const int N = spinor_size(dim);
  return CouplingSpec::with_L(constant_field(MatrixXcd::Identity(N, N)), tau * MatrixXcd::Identity(N, N));
}

// Circle of radius R with F = I, G = L: T = L Phi(z) (z + m sigma_3) with
// Phi = R^2 int_0^{2 pi} K_0(2 kappa R sin(psi/2)) dpsi = 2 pi R^2 I_0(kappa R) K_0(kappa R)
// by Graf's addition theorem at equal radii.
inline double circle_phi_graf(double R, double m, double z) {
  const double kappa = std::sqrt(m * m - z * z);
  return 2 * std::numbers::pi * R * R * boost::math::cyl_bessel_i(0, kappa * R) *
         boost::math::cyl_bessel_k(0, kappa * R);
}

// Gap roots of 1 + tau Phi(z) (z + s m), s = +1 and -1, for the unit-mass circle.
inline std::vector<double> circle_semi_analytic_roots(double R, double m, double tau) {
  std::vector<double> roots;
  for (int s : {+1, -1}) {
    auto f = [&](double z) { return 1 + tau * circle_phi_graf(R, m, z) * (z + s * m); };
    const double a = std::abs(m);
    const int n = 2000;
    for (int i = 0; i < n; ++i) {
      const double z0 = -a + 2 * a * (i + 0.5) / (n + 1), z1 = -a + 2 * a * (i + 1.5) / (n + 1);
      if ((f(z0) < 0) != (f(z1) < 0)) {
        std::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve(
            f, z0, z1, [](double x, double y) { return std::abs(x - y) < 1e-14; }, it);
        roots.push_back((r.first + r.second) / 2);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline MatrixXcd random_matrix(std::mt19937& gen, int N) {
  std::normal_distribution<double> nd;
  MatrixXcd M(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) M(i, j) = cplx(nd(gen), nd(gen));
  return M;
}

inline MatrixXcd random_hermitian(std::mt19937& gen, int N) {
  const MatrixXcd A = random_matrix(gen, N);
  return (A + A.adjoint()) / 2.0;
}

// 1 + a cos t + b sin 2t style profile with |coefficients| small enough to stay positive
inline ScalarProfile random_profile(std::mt19937& gen, int dim) {
  std::uniform_real_distribution<double> ud(-0.3, 0.3);
  ScalarProfile p;
  p.constant = 1.0;
  p.terms.push_back({ProfileTerm::Kind::Cos, 1, ud(gen)});
  p.terms.push_back({ProfileTerm::Kind::Sin, 2, ud(gen)});
  if (dim == 3) p.terms.push_back({ProfileTerm::Kind::PolarCos, 1, ud(gen)});
  return p;
}

}  // namespace testing_support
