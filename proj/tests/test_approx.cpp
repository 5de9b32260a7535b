#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace diracshell;
using namespace testing_support;

TEST_CASE("transverse profiles: mass, support, sgn pairing") {
  for (const auto& name : profile_kinds()) {
    const TransverseProfile v = make_profile(name);
    CHECK(v.name() == name);
    const GaussRule g = v.nodes(16);
    double mass = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) mass += g.w[i] * v(g.x[i]);
    CHECK(std::abs(mass - 1) <= 1e-12);
    CHECK(std::abs(v.cumulative(1) - v.cumulative(-1) - 1) <= 1e-14);
    CHECK(v.breaks().front() >= -1);
    CHECK(v.breaks().back() <= 1);
    CHECK(v(-1.0001) == 0);
    CHECK(v(1.0001) == 0);
    CHECK(std::abs(v.cumulative(1.0) - 1) <= 1e-15);
    CHECK(std::abs(sgn_pairing(v)) <= 1e-14);
    CHECK(std::abs(sgn_pairing_direct(v)) <= 1e-14);
  }
  CHECK(make_profile("triangle")(0.25) == 0.75);
  CHECK_THROWS_AS(make_profile("gaussian"), InvalidInput);
}

TEST_CASE("eps-level matrix: empty coupling and width errors") {
  const Surface c(ShapeSpec::circle(1.0));
  EpsOptions o;
  o.surface_order = 16;
  const SurfaceQuadrature q = surface_quadrature(c, 16);
  const ReducedCoupling zero =
      reduce_coupling(CouplingSpec::with_L(constant_field(MatrixXcd::Zero(2, 2)), MatrixXcd::Identity(2, 2)), q);
  CHECK(eps_bs_matrix(zero, KernelContext(2, 1.0, 0.1), c, make_profile("uniform"), 0.1, o).T.size() == 0);
  const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, 1.0), q);
  CHECK_THROWS_AS(eps_bs_matrix(rc, KernelContext(2, 1.0, 0.1), c, make_profile("uniform"), 0.6, o), InvalidInput);
  CHECK_THROWS_AS(convergence_sweep(c, rc, 1.0, 0.8, MatrixXcd::Zero(2, 2), make_profile("uniform"), {}, o), InvalidInput);
}

TEST_CASE("eps-level matrix approaches the exact one, independent of the profile") {
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 128);
  const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, 1.0), op.quadrature());
  const KernelContext ctx(2, 1.0, 0.5);
  const MatrixXcd T = bs_matrix(rc, ctx, op).T;
  EpsOptions o;
  o.surface_order = 32;
  std::vector<double> du, dt;
  MatrixXcd Tu, Tt;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    Tu = eps_bs_matrix(rc, ctx, c, make_profile("uniform"), eps, o).T;
    Tt = eps_bs_matrix(rc, ctx, c, make_profile("triangle"), eps, o).T;
    du.push_back((Tu - T).cwiseAbs().maxCoeff());
    dt.push_back((Tt - T).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 1; i < du.size(); ++i) {
    CHECK(du[i] < 1.1 * du[i - 1]);
    CHECK(dt[i] < 1.1 * dt[i - 1]);
    CHECK(du[i - 1] / du[i] >= 1.5);
  }
  CHECK((Tu - Tt).cwiseAbs().maxCoeff() <= 2 * (du.back() + dt.back()));
}

TEST_CASE("eps-level determinant is real for hermitian couplings and quadrature is converged") {
  std::mt19937 gen(8);
  const Surface s(ShapeSpec::ellipse(1.2, 0.9));
  const SurfaceQuadrature q = surface_quadrature(s, 32);
  const MatrixField F{random_matrix(gen, 2), random_profile(gen, 2)};
  const ReducedCoupling rc = reduce_coupling(CouplingSpec::with_L(F, random_hermitian(gen, 2)), q);
  REQUIRE(rc.hermiticity.hermitian);
  EpsOptions o;
  o.surface_order = 32;
  for (double z : {-0.5, 0.0, 0.5}) {
    const MatrixXcd T = eps_bs_matrix(rc, KernelContext(2, 1.0, z), s, make_profile("cosine"), 0.1, o).T;
    const cplx det = (MatrixXcd::Identity(2, 2) + T).determinant();
    CHECK(std::abs(det.imag()) <= 1e-6 * (1 + std::abs(det)));
  }
  const EpsBSMatrix chk = eps_bs_matrix(rc, KernelContext(2, 1.0, 0.2), s, make_profile("triangle"), 0.1, o, true);
  CHECK(chk.converged);
  CHECK(chk.convergence_delta <= 1e-3);
}

TEST_CASE("eps-level spectrum: count bound, single-row sweep, weight effect") {
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 128);
  const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, 1.0), op.quadrature());
  const BSFunction T = exact_bs_function(rc, op, 1.0);
  const SpectralResult exact = find_eigenvalues(det_scan(T, gap_grid(1.0, 200), 1.0), T, 1.0, rc.rank, true);
  REQUIRE(exact.eigenvalues.size() == 1);
  const double zs = exact.eigenvalues[0].z;

  EpsOptions o;
  o.surface_order = 32;
  const EpsAssembler a(c, rc, make_profile("uniform"), 0.1, o);
  const BSFunction Te = eps_bs_function(a, 2, 1.0);
  const auto trace = det_scan(Te, gap_grid(1.0, 40), 1.0);
  CHECK(max_imag_residue(trace) <= 1e-6);
  const SpectralResult er = find_eigenvalues(trace, Te, 1.0, rc.rank, true);
  CHECK(er.counted() <= rc.rank);
  REQUIRE(er.eigenvalues.size() == 1);
  CHECK(std::abs(er.eigenvalues[0].z - zs) < 0.05);

  const SweepResult one = convergence_sweep(c, rc, 1.0, zs, T(zs), make_profile("triangle"), {0.05}, o);
  CHECK(one.rows.size() == 1);
  CHECK(std::isfinite(one.rows[0].z_eps));

  EpsOptions nw = o;
  nw.use_weight = false;
  std::vector<double> diff;
  for (double eps : {0.1, 0.05, 0.025}) {
    const double zw = convergence_sweep(c, rc, 1.0, zs, T(zs), make_profile("uniform"), {eps}, o).rows[0].z_eps;
    const double zn = convergence_sweep(c, rc, 1.0, zs, T(zs), make_profile("uniform"), {eps}, nw).rows[0].z_eps;
    diff.push_back(std::abs(zw - zn));
  }
  CHECK(diff[1] < diff[0]);
  CHECK(diff[2] < diff[1]);
  CHECK(diff[0] / diff[2] > 2.5);
}
