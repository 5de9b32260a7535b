#include <numbers>
#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace diracshell;
using namespace testing_support;

TEST_CASE("sample_coupling") {
  const Surface c(ShapeSpec::circle(1.0));
  const SurfaceQuadrature q = surface_quadrature(c, 64);
  const MatrixXcd I2 = MatrixXcd::Identity(2, 2);
  const SampledCoupling s = sample_coupling(CouplingSpec::from_fields(constant_field(I2), constant_field(I2)), q);
  REQUIRE(s.F.size() == 64);
  for (const auto& f : s.F) CHECK(f == I2);

  const AlphaSet a = alpha_matrices(2);
  std::mt19937 gen(1);
  const MatrixXcd F = random_matrix(gen, 2);
  const SampledCoupling t = sample_coupling(CouplingSpec::with_L(constant_field(F), a.alpha0), q);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK((t.G[i] - t.F[i] * a.alpha0).norm() == 0);

  ScalarProfile cosp;
  cosp.constant = 0;
  cosp.terms.push_back({ProfileTerm::Kind::Cos, 1, 1.0});
  const SampledCoupling u = sample_coupling(CouplingSpec::from_fields({I2, cosp}, constant_field(I2)), q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double th = 2 * std::numbers::pi * i / 64.0;
    CHECK((u.F[i] - std::cos(th) * I2).norm() < 1e-14);
  }
  CHECK_THROWS_AS(sample_coupling(scalar_coupling(3, 1.0), q), InvalidInput);
}

TEST_CASE("hermiticity check") {
  const Surface c(ShapeSpec::circle(1.0));
  const SurfaceQuadrature q = surface_quadrature(c, 32);
  const MatrixXcd I2 = MatrixXcd::Identity(2, 2);
  auto check = [&](const CouplingSpec& cs) {
    const SampledCoupling s = sample_coupling(cs, q);
    return check_hermiticity(s.F, s.G);
  };
  const auto same = check(CouplingSpec::from_fields(constant_field(I2), constant_field(I2)));
  CHECK(same.hermitian);
  CHECK(same.defect == 0);
  CHECK_FALSE(check(CouplingSpec::with_L(constant_field(I2), cplx(0, 1) * I2)).hermitian);

  std::mt19937 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = trial % 2 ? 2 : 3;
    const int N = spinor_size(n);
    const Surface s(n == 2 ? ShapeSpec::ellipse(1.2, 0.8) : ShapeSpec::spheroid(1.0, 0.7));
    const SurfaceQuadrature qq = surface_quadrature(s, 8);
    const MatrixField F{random_matrix(gen, N), random_profile(gen, n)};
    const MatrixXcd L = random_hermitian(gen, N);
    const SampledCoupling h = sample_coupling(CouplingSpec::with_L(F, L), qq);
    CHECK(check_hermiticity(h.F, h.G).hermitian);
    MatrixXcd A = random_matrix(gen, N);
    A = (A - A.adjoint()) / 2.0;
    A *= 1e-6 / A.norm();
    const SampledCoupling nh = sample_coupling(CouplingSpec::with_L(F, L + A), qq);
    CHECK_FALSE(check_hermiticity(nh.F, nh.G).hermitian);
  }
}

TEST_CASE("reduce_basis: identity on the unit circle") {
  const Surface c(ShapeSpec::circle(1.0));
  const SurfaceQuadrature q = surface_quadrature(c, 64);
  const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, 1.0), q);
  CHECK(rc.rank == 2);
  const double s = std::sqrt(2 * std::numbers::pi);
  CHECK((rc.coefficients - s * MatrixXcd::Identity(2, 2)).norm() < 1e-13);
  for (const auto& b : rc.basis) CHECK((b - MatrixXcd::Identity(2, 2) / s).norm() < 1e-14);
}

TEST_CASE("reduce_basis: rank deficiency and zero") {
  const Surface c(ShapeSpec::circle(1.0));
  const SurfaceQuadrature q = surface_quadrature(c, 32);
  MatrixXcd F = MatrixXcd::Zero(2, 2);
  F(0, 0) = F(0, 1) = cplx(0.3, 0.2);
  CHECK(reduce_coupling(CouplingSpec::with_L(constant_field(F), MatrixXcd::Identity(2, 2)), q).rank == 1);
  const ReducedCoupling z = reduce_coupling(CouplingSpec::with_L(constant_field(MatrixXcd::Zero(2, 2)), MatrixXcd::Identity(2, 2)), q);
  CHECK(z.rank == 0);
  CHECK(z.empty());
  CHECK(z.coefficients.cols() == 0);
}

TEST_CASE("reduce_basis: orthonormality, reconstruction, Gram identity, permutation invariance") {
  std::mt19937 gen(21);
  for (int n : {2, 3}) {
    const int N = spinor_size(n);
    const Surface s(n == 2 ? ShapeSpec::star(1.0, {0.1}, {0.0, 0.05}) : ShapeSpec::spheroid(1.2, 0.9));
    const SurfaceQuadrature q = surface_quadrature(s, n == 2 ? 64 : 12);
    // F = M1 p1 + M2 p2: columns depend on position, generically full rank
    const MatrixXcd M1 = random_matrix(gen, N);
    const ScalarProfile p1 = random_profile(gen, n);
    std::vector<MatrixXcd> F(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Point& par = q.nodes[i].point.param;
      F[i] = M1 * p1(par);
      F[i].col(0) += M1.col(1) * par(0);
    }
    const ReducedCoupling rc = reduce_basis(F, q);
    REQUIRE(rc.rank == N);
    for (int i = 0; i < rc.rank; ++i)
      for (int j = 0; j < rc.rank; ++j)
        CHECK(std::abs(sampled_inner(rc.basis, i, rc.basis, j, q) - (i == j ? 1.0 : 0.0)) <= 1e-10);
    MatrixXcd gram(N, N);
    for (int k = 0; k < N; ++k) {
      double err = 0, norm = 0;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const VectorXcd rec = rc.basis[i] * rc.coefficients.row(k).transpose();
        err += q.nodes[i].weight * (F[i].col(k) - rec).squaredNorm();
        norm += q.nodes[i].weight * F[i].col(k).squaredNorm();
      }
      CHECK(std::sqrt(err) <= 1e-10 * std::sqrt(norm));
      for (int l = 0; l < N; ++l) gram(k, l) = sampled_inner(F, k, F, l, q);
    }
    // <f_k, f_l> = sum_j conj(C_kj) C_lj
    const MatrixXcd CC = rc.coefficients.conjugate() * rc.coefficients.transpose();
    CHECK((gram - CC).norm() <= 1e-9 * gram.norm());

    // permuted columns span the same space
    std::vector<MatrixXcd> P(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) P[i] = F[i].rowwise().reverse();
    const ReducedCoupling rp = reduce_basis(P, q);
    // projector as an operator on the sampled space: compare Q Q^* W for both
    double dmax = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); j += 7) {
        const MatrixXcd a = rc.basis[i] * rc.basis[j].adjoint(), b = rp.basis[i] * rp.basis[j].adjoint();
        dmax = std::max(dmax, (a - b).norm());
      }
    CHECK(dmax <= 1e-9);
  }
}
