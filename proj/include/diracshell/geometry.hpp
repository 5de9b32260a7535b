#pragma once

#include <array>
#include <string>
#include <vector>

#include "diracshell/types.hpp"

namespace diracshell {

enum class ShapeKind { Circle, Ellipse, Star, Sphere, Spheroid };

// Shape descriptor. Unused fields are ignored for a given kind.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Circle;
  double radius = 1.0;             // circle, sphere
  double a = 1.0, b = 1.0;         // ellipse semi-axes (x, y); spheroid uses a (equatorial)
  double c = 1.0;                  // spheroid polar semi-axis
  double r0 = 1.0;                 // star: r(t) = r0 + sum_k cos_k cos(kt) + sin_k sin(kt)
  std::vector<double> cos_coeffs;  // index k-1 holds the coefficient of cos(k t)
  std::vector<double> sin_coeffs;

  static ShapeSpec circle(double R);
  static ShapeSpec ellipse(double a, double b);
  static ShapeSpec star(double r0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);
  static ShapeSpec sphere(double R);
  static ShapeSpec spheroid(double a, double c);
};

std::string shape_name(ShapeKind kind);

// Geometry at one point of the surface. The parameter is a unit direction s:
// (cos t, sin t, 0) on curves, the reference sphere point on surfaces.
struct SurfacePoint {
  Point param = Point::Zero();
  Point x = Point::Zero();
  Point normal = Point::Zero();       // outward unit normal
  double jacobian = 0;                // length element per dt (n = 2), area element per d sigma_{S^2} (n = 3)
  std::array<double, 2> curvature{};  // principal curvatures, positive on convex shapes
};

class Surface {
 public:
  explicit Surface(ShapeSpec spec);

  int dimension() const { return dim_; }
  const ShapeSpec& spec() const { return spec_; }

  SurfacePoint at(const Point& s) const;
  SurfacePoint at_angle(double t) const;                  // curves
  SurfacePoint at_angles(double theta, double phi) const;  // surfaces: polar, azimuth

  // Chord x(t0) - x(t0 + t) on curves, free of cancellation for small t.
  Point chord(double t0, double t) const;
  // Surfaces are linear images x = D s of the reference sphere; returns D v.
  Point linear_image(const Point& v) const;

  // < 0 inside, > 0 outside
  double implicit(const Point& x) const;

  double max_curvature() const { return max_curvature_; }
  // largest admissible tubular half-width, 0.5 / max |kappa|
  double injectivity_threshold() const { return 0.5 / max_curvature_; }
  // rough tangential stretch of the parametrization, used to balance singular rules
  double length_scale() const { return scale_; }

 private:
  double star_radius(double t, double* d1, double* d2) const;

  ShapeSpec spec_;
  int dim_ = 2;
  double max_curvature_ = 1;
  double scale_ = 1;
};

Surface make_surface(const ShapeSpec& spec);

struct QuadratureNode {
  SurfacePoint point;
  double weight = 0;  // parameter weight times jacobian
};

struct SurfaceQuadrature {
  int dimension = 2;
  int order = 0;
  std::vector<QuadratureNode> nodes;
  double spacing = 0;  // typical distance between neighbouring nodes

  double total_measure() const;
  std::size_t size() const { return nodes.size(); }
};

// n = 2: periodic trapezoid with `order` nodes.
// n = 3: Gauss-Legendre in cos(theta) (order) x trapezoid in phi (2*order).
SurfaceQuadrature surface_quadrature(const Surface& s, int order);

// x + eps*u*nu(x)
Point tubular_point(const Surface& s, const SurfacePoint& p, double u, double eps);
// prod_mu (1 + eps*u*kappa_mu)
double tubular_weight(const Surface& s, const SurfacePoint& p, double u, double eps);
// unchecked variant for inner loops
inline double tubular_weight_unchecked(int dim, const SurfacePoint& p, double u, double eps) {
  double w = 1 + eps * u * p.curvature[0];
  if (dim == 3) w *= 1 + eps * u * p.curvature[1];
  return w;
}

// Throws unless 0 < eps <= injectivity threshold.
void require_admissible_width(const Surface& s, double eps);

// Product rule over the surface quadrature and a Gauss rule in u.
struct TubularRule {
  double eps = 0;
  std::vector<double> u;
  std::vector<double> u_weight;
  std::vector<double> weight;  // w_eps at (node i, u j), stored at i * u.size() + j

  // integral of eps * w_eps over Sigma x (-1, 1), i.e. the shell volume
  double volume(const SurfaceQuadrature& q) const;
};

TubularRule tubular_rule(const Surface& s, const SurfaceQuadrature& q, double eps, int transverse_points);

}  // namespace diracshell
