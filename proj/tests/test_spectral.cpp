#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace diracshell;
using namespace testing_support;

TEST_CASE("gap grid and scan errors") {
  const auto g = gap_grid(1.0, 400);
  CHECK(g.size() == 400);
  CHECK(std::abs(g.front() + 1 - 1e-3) < 1e-15);
  CHECK(std::abs(g.back() - 1 + 1e-3) < 1e-15);
  const BSFunction none = [](double) { return MatrixXcd(0, 0); };
  CHECK_THROWS_AS(det_scan(none, {}, 1.0), InvalidInput);
  CHECK_THROWS_AS(det_scan(none, {1.0}, 1.0), InvalidInput);
}

TEST_CASE("free problem: det = 1, no roots") {
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 64);
  for (const CouplingSpec& cs :
       {CouplingSpec::with_L(constant_field(MatrixXcd::Zero(2, 2)), MatrixXcd::Identity(2, 2)), scalar_coupling(2, 0.0)}) {
    const ReducedCoupling rc = reduce_coupling(cs, op.quadrature());
    const BSFunction T = exact_bs_function(rc, op, 1.0);
    const auto trace = det_scan(T, gap_grid(1.0, 50), 1.0);
    for (const auto& p : trace) CHECK(p.det == cplx(1, 0));
    CHECK(find_eigenvalues(trace, T, 1.0, rc.rank, true).eigenvalues.empty());
  }
}

TEST_CASE("circle benchmark: factorized determinant and semi-analytic roots") {
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 128);
  for (double tau : {-3.0, -1.0, 1.0, 3.0}) {
    const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, tau), op.quadrature());
    const BSFunction T = exact_bs_function(rc, op, 1.0);
    for (double z : {-0.5, 0.0, 0.5}) {
      const double phi = circle_phi_graf(1.0, 1.0, z);
      const cplx det = (MatrixXcd::Identity(2, 2) + T(z)).determinant();
      CHECK(std::abs(det - (1 + tau * phi * (z + 1)) * (1 + tau * phi * (z - 1))) <= 1e-6);
    }
    const auto trace = det_scan(T, gap_grid(1.0, 400), 1.0);
    CHECK(max_imag_residue(trace) <= 1e-8);
    const SpectralResult res = find_eigenvalues(trace, T, 1.0, rc.rank, true);
    const auto ref = circle_semi_analytic_roots(1.0, 1.0, tau);
    REQUIRE(res.eigenvalues.size() == ref.size());
    CHECK(res.counted() <= 2);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const Eigenpair& e = res.eigenvalues[i];
      CHECK(std::abs(e.z - ref[i]) <= 1e-6);
      CHECK(e.null_residual <= 1e-7);
      CHECK(std::abs(e.null_vector.norm() - 1) < 1e-12);
      CHECK_FALSE(e.multiplicity_uncertain);
    }
  }
}

TEST_CASE("small coupling: det expands as 1 + tau tr A + tau^2 det A") {
  // circle, F = I, L = tau I: A = Phi diag(z + m, z - m), so det A = Phi^2 (z^2 - m^2)
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 64);
  for (double tau : {1e-3, 1e-4}) {
    const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, tau), op.quadrature());
    for (const auto& p : det_scan(exact_bs_function(rc, op, 1.0), gap_grid(1.0, 41), 1.0)) {
      const double phi = circle_phi_graf(1.0, 1.0, p.z);
      const cplx expect = 1 + tau * phi * 2 * p.z + tau * tau * phi * phi * (p.z * p.z - 1);
      CHECK(std::abs(p.det - expect) <= 1e-9 * std::abs(expect));
    }
  }
}

TEST_CASE("non-hermitian couplings are refused") {
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 32);
  const ReducedCoupling rc =
      reduce_coupling(CouplingSpec::with_L(constant_field(MatrixXcd::Identity(2, 2)), cplx(0, 1) * MatrixXcd::Identity(2, 2)),
                      op.quadrature());
  CHECK_FALSE(rc.hermiticity.hermitian);
  const BSFunction T = exact_bs_function(rc, op, 1.0);
  CHECK_THROWS_AS(find_eigenvalues(det_scan(T, gap_grid(1.0, 10), 1.0), T, 1.0, rc.rank, false), InvalidInput);
}

TEST_CASE("root stability under quadrature refinement and (F, G) swap") {
  std::mt19937 gen(12);
  const Surface s(ShapeSpec::ellipse(1.2, 0.9));
  // constant densities: the swap identity does not extend to profiled fields
  const MatrixXcd M = MatrixXcd::Identity(2, 2) + 0.3 * random_matrix(gen, 2);
  const MatrixField F{M, {}};
  const MatrixField G{M * alpha_matrices(2).alpha0 * -2.0, {}};  // G = F L, L = -2 sigma_3
  auto roots = [&](const CouplingSpec& cs, int order) {
    const WeylOperator op(s, order);
    const ReducedCoupling rc = reduce_coupling(cs, op.quadrature());
    const BSFunction T = exact_bs_function(rc, op, 1.0);
    return find_eigenvalues(det_scan(T, gap_grid(1.0, 400), 1.0), T, 1.0, rc.rank, rc.hermiticity.hermitian);
  };
  const SpectralResult a = roots(CouplingSpec::from_fields(F, G), 128);
  const SpectralResult b = roots(CouplingSpec::from_fields(F, G), 256);
  const SpectralResult sw = roots(CouplingSpec::from_fields(G, F), 128);
  REQUIRE(!a.eigenvalues.empty());
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  REQUIRE(a.eigenvalues.size() == sw.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(std::abs(a.eigenvalues[i].z - b.eigenvalues[i].z) <= 1e-6);
    CHECK(std::abs(a.eigenvalues[i].z - sw.eigenvalues[i].z) <= 1e-8);
  }
}

TEST_CASE("coupling strength to zero empties the gap") {
  // in the plane any tau > 0 binds; the level drifts to -m as tau -> 0 and leaves the scanned gap
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 64);
  std::vector<std::size_t> counts;
  double last = 1;
  for (double tau : {1.0, 0.3, 0.1, 0.03, 0.003}) {
    const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, tau), op.quadrature());
    const BSFunction T = exact_bs_function(rc, op, 1.0);
    const auto res = find_eigenvalues(det_scan(T, gap_grid(1.0, 400), 1.0), T, 1.0, rc.rank, true);
    counts.push_back(res.eigenvalues.size());
    if (!res.eigenvalues.empty()) {
      CHECK(res.eigenvalues[0].z < last);
      last = res.eigenvalues[0].z;
    }
  }
  CHECK(counts.front() == 1);
  CHECK(counts.back() == 0);
}

TEST_CASE("analyze_root and dip refinement on a double root") {
  // T(z) = -diag(f, f) with a double zero of det at z = 0.2 and no sign change
  const BSFunction T = [](double z) {
    MatrixXcd t = MatrixXcd::Zero(2, 2);
    t(0, 0) = t(1, 1) = -1.0 + (z - 0.2);
    return t;
  };
  const auto res = find_eigenvalues(det_scan(T, gap_grid(1.0, 101), 1.0), T, 1.0, 2, true);
  REQUIRE(res.eigenvalues.size() == 1);
  CHECK(std::abs(res.eigenvalues[0].z - 0.2) < 1e-6);
  CHECK(res.eigenvalues[0].multiplicity == 2);
  CHECK(res.eigenvalues[0].multiplicity_uncertain);
  CHECK(std::abs(refine_dip(T, 0.21, 0.1, 0.3) - 0.2) < 1e-6);
  const Eigenpair e = analyze_root(0.999, T(0.999), 1.0);
  CHECK(e.gap_edge);
}

TEST_CASE("eigenfunctions of the circle benchmark") {
  const Surface c(ShapeSpec::circle(1.0));
  const WeylOperator op(c, 256);
  const ReducedCoupling rc = reduce_coupling(scalar_coupling(2, 1.0), op.quadrature());
  const BSFunction T = exact_bs_function(rc, op, 1.0);
  const SpectralResult res = find_eigenvalues(det_scan(T, gap_grid(1.0, 200), 1.0), T, 1.0, rc.rank, true);
  REQUIRE(res.eigenvalues.size() == 1);
  const double z = res.eigenvalues[0].z;

  std::vector<Point> pts;
  for (double x = -2; x <= 2.001; x += 0.25)
    for (double y = -2; y <= 2.001; y += 0.25) pts.emplace_back(x, y, 0);
  const EigenfunctionSamples ef = eigenfunction(res, 0, rc, op.quadrature(), pts, 0.0625);
  double norm2 = 0;
  int collar = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    norm2 += ef.values[i].squaredNorm() * 0.0625;
    collar += ef.collar[i];
  }
  CHECK(std::abs(norm2 - 1) < 1e-12);
  CHECK(collar > 0);

  const KernelContext ctx(2, 1.0, z);
  const VectorXcd a = res.eigenvalues[0].null_vector;
  auto u = [&](const Point& p) -> VectorXcd { return gamma_apply(a, rc, ctx, {p}, op.quadrature()).values[0]; };
  for (const Point& p : {Point(0.3, 0.2, 0), Point(0, -0.5, 0), Point(1.5, 0.5, 0), Point(-1.2, -1.4, 0)}) {
    const FDResult r = free_dirac_fd(u, p, 2, 1.0, z, 2e-3);
    CHECK(r.value.norm() <= 1e-5 * r.scale);
  }
  const DecayFit d = eigenfunction_decay(res, 0, rc, op.quadrature(), Point(1, 0, 0));
  CHECK(std::abs(d.rate - d.expected) <= 0.05 * d.expected);
  CHECK(std::abs(d.expected - std::sqrt(1 - z * z)) < 1e-14);

  CHECK_THROWS_AS(eigenfunction(res, 3, rc, op.quadrature(), pts), InvalidInput);
  CHECK_THROWS_AS(eigenfunction(res, 0, rc, op.quadrature(), {}), InvalidInput);
  SpectralResult zero = res;
  zero.eigenvalues[0].null_vector.setZero();
  CHECK_THROWS_AS(eigenfunction(zero, 0, rc, op.quadrature(), pts), InvalidInput);
  CHECK_THROWS_AS(eigenfunction(res, 0, rc, op.quadrature(), {Point(1.0, 1e-4, 0)}), NumericalFailure);
}
