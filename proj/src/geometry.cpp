#include "diracshell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diracshell/gauss.hpp"

namespace diracshell {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    throw InvalidInput(std::string("surface: ") + what + " must be positive");
}

}  // namespace

ShapeSpec ShapeSpec::circle(double R) {
  ShapeSpec s;
  s.kind = ShapeKind::Circle;
  s.radius = R;
  return s;
}

ShapeSpec ShapeSpec::ellipse(double a, double b) {
  ShapeSpec s;
  s.kind = ShapeKind::Ellipse;
  s.a = a;
  s.b = b;
  return s;
}

ShapeSpec ShapeSpec::star(double r0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs) {
  ShapeSpec s;
  s.kind = ShapeKind::Star;
  s.r0 = r0;
  s.cos_coeffs = std::move(cos_coeffs);
  s.sin_coeffs = std::move(sin_coeffs);
  return s;
}

ShapeSpec ShapeSpec::sphere(double R) {
  ShapeSpec s;
  s.kind = ShapeKind::Sphere;
  s.radius = R;
  return s;
}

ShapeSpec ShapeSpec::spheroid(double a, double c) {
  ShapeSpec s;
  s.kind = ShapeKind::Spheroid;
  s.a = a;
  s.c = c;
  return s;
}

std::string shape_name(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Star: return "star";
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Spheroid: return "spheroid";
  }
  return "unknown";
}

Surface::Surface(ShapeSpec spec) : spec_(std::move(spec)) {
  switch (spec_.kind) {
    case ShapeKind::Circle:
      require_positive(spec_.radius, "radius");
      dim_ = 2;
      max_curvature_ = 1 / spec_.radius;
      scale_ = spec_.radius;
      break;
    case ShapeKind::Sphere:
      require_positive(spec_.radius, "radius");
      dim_ = 3;
      max_curvature_ = 1 / spec_.radius;
      scale_ = spec_.radius;
      break;
    case ShapeKind::Ellipse:
      require_positive(spec_.a, "semi-axis a");
      require_positive(spec_.b, "semi-axis b");
      dim_ = 2;
      max_curvature_ = std::max(spec_.a / (spec_.b * spec_.b), spec_.b / (spec_.a * spec_.a));
      scale_ = (spec_.a + spec_.b) / 2;
      break;
    case ShapeKind::Spheroid: {
      require_positive(spec_.a, "semi-axis a");
      require_positive(spec_.c, "semi-axis c");
      dim_ = 3;
      const double a = spec_.a, c = spec_.c;
      // both curvatures are monotone in the polar angle; extremes sit at pole and equator
      max_curvature_ = std::max({c / (a * a), a / (c * c), 1 / a, c / (a * a)});
      scale_ = (a + c) / 2;
      break;
    }
    case ShapeKind::Star: {
      require_positive(spec_.r0, "r0");
      dim_ = 2;
      double kmax = 0, rmin = std::numeric_limits<double>::max(), speed = 0;
      const int samples = 8192;
      for (int j = 0; j < samples; ++j) {
        const double t = 2 * kPi * j / samples;
        double d1, d2;
        const double r = star_radius(t, &d1, &d2);
        rmin = std::min(rmin, r);
        const double q = r * r + d1 * d1;
        kmax = std::max(kmax, std::abs(r * r + 2 * d1 * d1 - r * d2) / std::pow(q, 1.5));
        speed += std::sqrt(q) / samples;
      }
      if (!(rmin > 0)) throw InvalidInput("surface: star radius r(t) must stay positive");
      max_curvature_ = kmax;
      scale_ = speed;
      break;
    }
  }
}

double Surface::star_radius(double t, double* d1, double* d2) const {
  double r = spec_.r0, r1 = 0, r2 = 0;
  for (std::size_t k = 1; k <= std::max(spec_.cos_coeffs.size(), spec_.sin_coeffs.size()); ++k) {
    const double a = k <= spec_.cos_coeffs.size() ? spec_.cos_coeffs[k - 1] : 0.0;
    const double b = k <= spec_.sin_coeffs.size() ? spec_.sin_coeffs[k - 1] : 0.0;
    const double ck = std::cos(k * t), sk = std::sin(k * t);
    const double kk = static_cast<double>(k);
    r += a * ck + b * sk;
    r1 += kk * (-a * sk + b * ck);
    r2 += -kk * kk * (a * ck + b * sk);
  }
  if (d1) *d1 = r1;
  if (d2) *d2 = r2;
  return r;
}

SurfacePoint Surface::at_angle(double t) const { return at(Point(std::cos(t), std::sin(t), 0)); }

SurfacePoint Surface::at_angles(double theta, double phi) const {
  const double st = std::sin(theta);
  return at(Point(st * std::cos(phi), st * std::sin(phi), std::cos(theta)));
}

SurfacePoint Surface::at(const Point& s) const {
  SurfacePoint p;
  p.param = s;
  switch (spec_.kind) {
    case ShapeKind::Circle: {
      const double R = spec_.radius;
      p.x = R * s;
      p.normal = s;
      p.jacobian = R;
      p.curvature = {1 / R, 0};
      break;
    }
    case ShapeKind::Sphere: {
      const double R = spec_.radius;
      p.x = R * s;
      p.normal = s;
      p.jacobian = R * R;
      p.curvature = {1 / R, 1 / R};
      break;
    }
    case ShapeKind::Ellipse: {
      const double a = spec_.a, b = spec_.b, c = s(0), sn = s(1);
      p.x = Point(a * c, b * sn, 0);
      const double speed = std::hypot(a * sn, b * c);
      p.normal = Point(b * c, a * sn, 0) / speed;
      p.jacobian = speed;
      p.curvature = {a * b / (speed * speed * speed), 0};
      break;
    }
    case ShapeKind::Star: {
      const double t = std::atan2(s(1), s(0));
      double r1, r2;
      const double r = star_radius(t, &r1, &r2);
      const Point perp(-s(1), s(0), 0);
      p.x = r * s;
      const double speed = std::hypot(r, r1);
      p.normal = (r * s - r1 * perp) / speed;
      p.jacobian = speed;
      p.curvature = {(r * r + 2 * r1 * r1 - r * r2) / (speed * speed * speed), 0};
      break;
    }
    case ShapeKind::Spheroid: {
      const double a = spec_.a, c = spec_.c;
      p.x = Point(a * s(0), a * s(1), c * s(2));
      const Point g(s(0) / a, s(1) / a, s(2) / c);
      const double gn = g.norm();
      p.normal = g / gn;
      p.jacobian = a * a * c * gn;
      const double cz = s(2), sz2 = std::max(0.0, 1 - cz * cz);
      const double q = a * a * cz * cz + c * c * sz2;
      p.curvature = {a * c / std::pow(q, 1.5), c / (a * std::sqrt(q))};
      break;
    }
  }
  return p;
}

Point Surface::chord(double t0, double t) const {
  // cos a - cos b = -2 sin((a+b)/2) sin((a-b)/2), sin a - sin b = 2 cos((a+b)/2) sin((a-b)/2)
  const double h = std::sin(t / 2), m = t0 + t / 2;
  const Point ds(2 * std::sin(m) * h, -2 * std::cos(m) * h, 0);  // s(t0) - s(t0 + t)
  switch (spec_.kind) {
    case ShapeKind::Circle: return spec_.radius * ds;
    case ShapeKind::Ellipse: return Point(spec_.a * ds(0), spec_.b * ds(1), 0);
    case ShapeKind::Star: {
      double dr = 0;
      for (std::size_t k = 1; k <= std::max(spec_.cos_coeffs.size(), spec_.sin_coeffs.size()); ++k) {
        const double a = k <= spec_.cos_coeffs.size() ? spec_.cos_coeffs[k - 1] : 0.0;
        const double b = k <= spec_.sin_coeffs.size() ? spec_.sin_coeffs[k - 1] : 0.0;
        const double kk = static_cast<double>(k);
        const double hk = std::sin(kk * t / 2), mk = kk * (t0 + t / 2);
        dr += a * 2 * std::sin(mk) * hk - b * 2 * std::cos(mk) * hk;
      }
      const double r0 = star_radius(t0, nullptr, nullptr);
      // r(t0) s0 - r(t1) s1 = r(t0) (s0 - s1) + (r(t0) - r(t1)) s1
      return r0 * ds + dr * Point(std::cos(t0 + t), std::sin(t0 + t), 0);
    }
    default: throw InvalidInput("chord: defined for curves only");
  }
}

Point Surface::linear_image(const Point& v) const {
  switch (spec_.kind) {
    case ShapeKind::Sphere: return spec_.radius * v;
    case ShapeKind::Spheroid: return Point(spec_.a * v(0), spec_.a * v(1), spec_.c * v(2));
    default: throw InvalidInput("linear_image: defined for surfaces only");
  }
}

double Surface::implicit(const Point& x) const {
  switch (spec_.kind) {
    case ShapeKind::Circle: return std::hypot(x(0), x(1)) - spec_.radius;
    case ShapeKind::Sphere: return x.norm() - spec_.radius;
    case ShapeKind::Ellipse: {
      const double u = x(0) / spec_.a, v = x(1) / spec_.b;
      return u * u + v * v - 1;
    }
    case ShapeKind::Spheroid: {
      const double u = x(0) / spec_.a, v = x(1) / spec_.a, w = x(2) / spec_.c;
      return u * u + v * v + w * w - 1;
    }
    case ShapeKind::Star:
      return std::hypot(x(0), x(1)) - star_radius(std::atan2(x(1), x(0)), nullptr, nullptr);
  }
  return 0;
}

Surface make_surface(const ShapeSpec& spec) { return Surface(spec); }

double SurfaceQuadrature::total_measure() const {
  double s = 0;
  for (const auto& n : nodes) s += n.weight;
  return s;
}

SurfaceQuadrature surface_quadrature(const Surface& s, int order) {
  if (order < 4) throw InvalidInput("surface_quadrature: order must be at least 4");
  SurfaceQuadrature q;
  q.dimension = s.dimension();
  q.order = order;
  if (s.dimension() == 2) {
    q.nodes.reserve(order);
    double spacing = 0;
    for (int j = 0; j < order; ++j) {
      QuadratureNode n;
      n.point = s.at_angle(2 * kPi * j / order);
      n.weight = 2 * kPi / order * n.point.jacobian;
      spacing = std::max(spacing, n.weight);
      q.nodes.push_back(n);
    }
    q.spacing = spacing;
    return q;
  }
  const GaussRule& g = gauss_legendre(order);
  const int nphi = 2 * order;
  q.nodes.reserve(static_cast<std::size_t>(order) * nphi);
  for (int i = 0; i < order; ++i) {
    const double ct = g.x[i], st = std::sqrt(std::max(0.0, 1 - ct * ct));
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2 * kPi * j / nphi;
      QuadratureNode n;
      n.point = s.at(Point(st * std::cos(phi), st * std::sin(phi), ct));
      n.weight = g.w[i] * (2 * kPi / nphi) * n.point.jacobian;
      q.nodes.push_back(n);
    }
  }
  double amax = s.spec().kind == ShapeKind::Spheroid ? std::max(s.spec().a, s.spec().c) : s.spec().radius;
  q.spacing = amax * kPi / order;
  return q;
}

void require_admissible_width(const Surface& s, double eps) {
  if (!(eps > 0)) throw InvalidInput("tubular width eps must be positive");
  if (eps > s.injectivity_threshold())
    throw InvalidInput("tubular width eps = " + std::to_string(eps) +
                       " exceeds the injectivity threshold; maximum allowed eps is " +
                       std::to_string(s.injectivity_threshold()));
}

namespace {
void require_transverse(double u) {
  if (!(std::abs(u) < 1)) throw InvalidInput("transverse coordinate u must satisfy |u| < 1");
}
}  // namespace

Point tubular_point(const Surface& s, const SurfacePoint& p, double u, double eps) {
  require_admissible_width(s, eps);
  require_transverse(u);
  return p.x + eps * u * p.normal;
}

double tubular_weight(const Surface& s, const SurfacePoint& p, double u, double eps) {
  require_admissible_width(s, eps);
  require_transverse(u);
  return tubular_weight_unchecked(s.dimension(), p, u, eps);
}

double TubularRule::volume(const SurfaceQuadrature& q) const {
  double v = 0;
  const std::size_t nu = u.size();
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    for (std::size_t j = 0; j < nu; ++j) v += q.nodes[i].weight * u_weight[j] * eps * weight[i * nu + j];
  return v;
}

TubularRule tubular_rule(const Surface& s, const SurfaceQuadrature& q, double eps, int transverse_points) {
  require_admissible_width(s, eps);
  TubularRule r;
  r.eps = eps;
  const GaussRule& g = gauss_legendre(transverse_points);
  r.u = g.x;
  r.u_weight = g.w;
  r.weight.reserve(q.nodes.size() * g.x.size());
  for (const auto& n : q.nodes)
    for (double u : g.x) r.weight.push_back(tubular_weight_unchecked(s.dimension(), n.point, u, eps));
  return r;
}

}  // namespace diracshell
