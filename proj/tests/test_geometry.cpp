#include <numbers>

#include "doctest.h"
#include "diracshell/geometry.hpp"

using namespace diracshell;
constexpr double pi = std::numbers::pi;

TEST_CASE("surface measures and curvatures") {
  const Surface c = make_surface(ShapeSpec::circle(1.0));
  const SurfaceQuadrature qc = surface_quadrature(c, 64);
  CHECK(std::abs(qc.total_measure() - 2 * pi) <= 1e-12);
  for (const auto& nd : qc.nodes) {
    CHECK(std::abs(nd.point.curvature[0] - 1) < 1e-14);
    CHECK(std::abs(nd.point.normal.norm() - 1) <= 1e-12);
  }
  double s = 0;
  for (const auto& nd : qc.nodes) s += nd.weight * std::cos(std::atan2(nd.point.x(1), nd.point.x(0)));
  CHECK(std::abs(s) <= 1e-13);

  const Surface sp = make_surface(ShapeSpec::sphere(2.0));
  const SurfaceQuadrature qs = surface_quadrature(sp, 32);
  CHECK(std::abs(qs.total_measure() - 16 * pi) <= 1e-10 * 16 * pi);
  for (const auto& nd : qs.nodes) {
    CHECK(std::abs(nd.point.curvature[0] - 0.5) < 1e-13);
    CHECK(std::abs(nd.point.curvature[1] - 0.5) < 1e-13);
  }
  CHECK(std::abs(surface_quadrature(make_surface(ShapeSpec::sphere(1.0)), 32).total_measure() - 4 * pi) <= 1e-10);
}

TEST_CASE("ellipse curvature at the end of the major axis is a / b^2") {
  const Surface e = make_surface(ShapeSpec::ellipse(2.0, 1.0));
  const SurfacePoint p = e.at_angle(0.0);
  CHECK(std::abs(p.x(0) - 2) < 1e-15);
  CHECK(std::abs(p.curvature[0] - 2.0) < 1e-13);
  // classical perimeter of the (2, 1) ellipse
  CHECK(std::abs(surface_quadrature(e, 128).total_measure() - 9.688448220547675) < 1e-12);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(Surface(ShapeSpec::circle(0.0)), InvalidInput);
  CHECK_THROWS_AS(Surface(ShapeSpec::ellipse(1.0, -1.0)), InvalidInput);
  CHECK_THROWS_AS(Surface(ShapeSpec::spheroid(0.0, 1.0)), InvalidInput);
  CHECK_THROWS_AS(Surface(ShapeSpec::star(1.0, {1.5}, {})), InvalidInput);
  CHECK_THROWS_AS(surface_quadrature(make_surface(ShapeSpec::circle(1.0)), 3), InvalidInput);
}

TEST_CASE("normals point outward on every shape") {
  for (const ShapeSpec& sp : {ShapeSpec::circle(1.5), ShapeSpec::ellipse(2.0, 0.7), ShapeSpec::star(1.0, {0, 0.2}, {0.1}),
                              ShapeSpec::sphere(1.2), ShapeSpec::spheroid(1.5, 0.8)}) {
    const Surface s(sp);
    for (const auto& nd : surface_quadrature(s, 16).nodes) {
      CHECK(std::abs(nd.point.normal.norm() - 1) <= 1e-12);
      CHECK(s.implicit(nd.point.x + 1e-6 * nd.point.normal) > 0);
      CHECK(s.implicit(nd.point.x - 1e-6 * nd.point.normal) < 0);
    }
  }
}

TEST_CASE("chord and linear image are consistent with positions") {
  const Surface st(ShapeSpec::star(1.0, {0.1, 0.05}, {0.0, 0.08}));
  for (double t0 : {0.0, 1.0, 4.0})
    for (double t : {1e-12, 1e-3, 0.5, 2.0}) {
      const Point d = st.chord(t0, t);
      const Point ref = st.at_angle(t0).x - st.at_angle(t0 + t).x;
      CHECK((d - ref).norm() <= 1e-14 + 1e-12 * ref.norm());
    }
  const Surface sd(ShapeSpec::spheroid(1.5, 0.8));
  const Point s(0.36, 0.48, 0.8);
  CHECK((sd.linear_image(s) - sd.at(s).x).norm() < 1e-15);
}

TEST_CASE("tubular point and weight") {
  const Surface c(ShapeSpec::circle(1.0));
  const SurfacePoint p = c.at_angle(0.0);
  CHECK((tubular_point(c, p, 0.5, 0.2) - Point(1.1, 0, 0)).norm() < 1e-15);
  CHECK((tubular_point(c, p, 0.0, 0.2) - p.x).norm() == 0);
  const Surface s(ShapeSpec::sphere(1.0));
  const SurfacePoint n = s.at(Point(0, 0, 1));
  CHECK((tubular_point(s, n, -0.5, 0.1) - Point(0, 0, 0.95)).norm() < 1e-15);

  const Surface c2(ShapeSpec::circle(2.0));
  CHECK(std::abs(tubular_weight(c2, c2.at_angle(1.0), 0.3, 0.4) - (1 + 0.4 * 0.3 / 2)) < 1e-15);
  const Surface s2(ShapeSpec::sphere(2.0));
  CHECK(std::abs(tubular_weight(s2, s2.at_angles(1.0, 2.0), 0.3, 0.4) - std::pow(1 + 0.4 * 0.3 / 2, 2)) < 1e-15);

  // linear rate in eps: slope equals u * sum kappa_mu
  const Surface e(ShapeSpec::spheroid(1.5, 0.8));
  const SurfacePoint q = e.at_angles(0.7, 0.3);
  const double u = 0.6;
  const double slope = (tubular_weight(e, q, u, 1e-4) - 1) / 1e-4;
  const double expect = u * (q.curvature[0] + q.curvature[1]);
  CHECK(std::abs(slope - expect) <= 0.01 * std::abs(expect));

  CHECK_THROWS_AS(tubular_point(c, p, 0.5, 0.6), InvalidInput);   // above 0.5 / kappa
  CHECK_THROWS_AS(tubular_weight(c, p, 1.0, 0.1), InvalidInput);  // |u| = 1
  try {
    require_admissible_width(c2, 5.0);
  } catch (const InvalidInput& ex) {
    CHECK(std::string(ex.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("shell volumes from the tubular rule") {
  const double R = 1.3, eps = 0.2;
  const Surface c(ShapeSpec::circle(R));
  const SurfaceQuadrature qc = surface_quadrature(c, 32);
  const double annulus = pi * ((R + eps) * (R + eps) - (R - eps) * (R - eps));
  CHECK(std::abs(tubular_rule(c, qc, eps, 4).volume(qc) / annulus - 1) <= 1e-10);
  const Surface s(ShapeSpec::sphere(R));
  const SurfaceQuadrature qs = surface_quadrature(s, 16);
  const double shell = 4.0 / 3 * pi * (std::pow(R + eps, 3) - std::pow(R - eps, 3));
  CHECK(std::abs(tubular_rule(s, qs, eps, 4).volume(qs) / shell - 1) <= 1e-10);
}

TEST_CASE("offset metric matches the tubular weight") {
  // curves: |d/dt (x + t nu)| / |dx/dt| = 1 + t kappa
  const Surface st(ShapeSpec::star(1.0, {0.0, 0.15}, {0.05}));
  const double eps = 0.1, u = 0.7, h = 1e-5;
  for (double t : {0.2, 1.3, 3.0}) {
    auto off = [&](double a) { const SurfacePoint p = st.at_angle(a); return Point(p.x + eps * u * p.normal); };
    auto on = [&](double a) { return st.at_angle(a).x; };
    const double ratio = (off(t + h) - off(t - h)).norm() / (on(t + h) - on(t - h)).norm();
    CHECK(std::abs(ratio / tubular_weight(st, st.at_angle(t), u, eps) - 1) <= 1e-6);
  }
  // surfaces: area ratio of the offset parallelogram
  const Surface sd(ShapeSpec::spheroid(1.4, 0.9));
  for (double th : {0.6, 1.4})
    for (double ph : {0.3, 2.0}) {
      auto off = [&](double a, double b) { const SurfacePoint p = sd.at_angles(a, b); return Point(p.x + eps * u * p.normal); };
      auto on = [&](double a, double b) { return sd.at_angles(a, b).x; };
      const Point a1 = (off(th + h, ph) - off(th - h, ph)), b1 = (off(th, ph + h) - off(th, ph - h));
      const Point a0 = (on(th + h, ph) - on(th - h, ph)), b0 = (on(th, ph + h) - on(th, ph - h));
      const double ratio = a1.cross(b1).norm() / a0.cross(b0).norm();
      CHECK(std::abs(ratio / tubular_weight(sd, sd.at_angles(th, ph), u, eps) - 1) <= 1e-6);
    }
}
