#include "diracshell/boundary_integrals.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "diracshell/gauss.hpp"

namespace diracshell {

namespace {

constexpr double kPi = std::numbers::pi;

void require_gap_energy(const KernelContext& ctx, const char* who) {
  if (!ctx.in_gap())
    throw std::domain_error(std::string(who) + ": z must be real and inside (-|m|, |m|)");
}

// Orthonormal pair spanning the tangent plane of the unit sphere at s.
void tangent_frame(const Point& s, Point& e1, Point& e2) {
  const Point ref = std::abs(s(2)) < 0.9 ? Point(0, 0, 1) : Point(1, 0, 0);
  e1 = ref.cross(s).normalized();
  e2 = s.cross(e1);
}

}  // namespace

WeylOperator::WeylOperator(const Surface& s, int order, SingularRuleOptions opt)
    : surface_(s), quad_(surface_quadrature(s, order)), opt_(opt) {
  if (opt_.panel_points < 2 || !(opt_.grading > 0 && opt_.grading < 1) || !(opt_.smallest_panel > 0))
    throw InvalidInput("WeylOperator: invalid singular rule options");
  if (s.dimension() == 2) {
    double b = kPi;
    while (b > opt_.smallest_panel) {
      const double a = b * opt_.grading;
      const GaussRule g = gauss_legendre(opt_.panel_points, a, b);
      fold_t_.insert(fold_t_.end(), g.x.begin(), g.x.end());
      fold_w_.insert(fold_w_.end(), g.w.begin(), g.w.end());
      b = a;
    }
  } else {
    if (opt_.polar_points <= 0) opt_.polar_points = order;
    if (opt_.azimuth_points <= 0) opt_.azimuth_points = 2 * order;
    if (opt_.azimuth_points % 2) ++opt_.azimuth_points;
  }
}

template <int Dim>
std::vector<MatrixXcd> WeylOperator::apply_impl(const MatrixField& f, const KernelContext& ctx) const {
  using Sp = Spinor<Dim>;
  using Block = typename Sp::Block;
  const int n = static_cast<int>(quad_.size());
  std::vector<MatrixXcd> out(n);
  const Block fm = f.matrix;

  with_resolvent<Dim>(ctx, [&](const auto& R) {
    if constexpr (Dim == 2) {
      const int nf = static_cast<int>(fold_t_.size());
#pragma omp parallel for schedule(dynamic, 4)
      for (int i = 0; i < n; ++i) {
        const SurfacePoint& x = quad_.nodes[i].point;
        const double t0 = std::atan2(x.param(1), x.param(0));
        typename Sp::Matrix acc = Sp::Matrix::Zero();
        for (int q = 0; q < nf; ++q) {
          for (int side = -1; side <= 1; side += 2) {
            const double t = side * fold_t_[q];
            const SurfacePoint y = surface_.at_angle(t0 + t);
            acc.noalias() += (fold_w_[q] * y.jacobian * f.profile(y.param)) * R(surface_.chord(t0, t));
          }
        }
        out[i] = acc * fm;
      }
    } else {
      const GaussRule& gp = gauss_legendre(opt_.polar_points, 0.0, kPi);
      const int na = opt_.azimuth_points;
      std::vector<double> ca(na), sa(na);
      for (int j = 0; j < na; ++j) {
        ca[j] = std::cos(2 * kPi * j / na);
        sa[j] = std::sin(2 * kPi * j / na);
      }
      const double wa = 2 * kPi / na;
#pragma omp parallel for schedule(dynamic, 4)
      for (int i = 0; i < n; ++i) {
        const SurfacePoint& x = quad_.nodes[i].point;
        Point e1, e2;
        tangent_frame(x.param, e1, e2);
        typename Sp::Matrix acc = Sp::Matrix::Zero();
        for (std::size_t p = 0; p < gp.x.size(); ++p) {
          const double ct = std::cos(gp.x[p]), st = std::sin(gp.x[p]);
          const double vers = 2 * std::pow(std::sin(gp.x[p] / 2), 2);  // 1 - cos, without cancellation
          for (int j = 0; j < na; ++j) {
            const Point e = ca[j] * e1 + sa[j] * e2;
            const Point s = ct * x.param + st * e;
            const SurfacePoint y = surface_.at(s);
            const double w = gp.w[p] * wa * st * y.jacobian * f.profile(y.param);
            acc.noalias() += w * R(surface_.linear_image(vers * x.param - st * e));
          }
        }
        out[i] = acc * fm;
      }
    }
    return 0;
  });
  return out;
}

std::vector<MatrixXcd> WeylOperator::apply(const MatrixField& f, const KernelContext& ctx) const {
  if (ctx.dimension != surface_.dimension()) throw InvalidInput("WeylOperator: dimension mismatch");
  if (f.rows() != spinor_size(ctx.dimension)) throw InvalidInput("WeylOperator: density has wrong spinor size");
  require_resolvent_set(ctx);
  if (surface_.dimension() == 2) return apply_impl<2>(f, ctx);
  return apply_impl<3>(f, ctx);
}

MatrixXcd WeylOperator::pairing(const MatrixField& g, const MatrixField& f, const KernelContext& ctx) const {
  const std::vector<MatrixXcd> mf = apply(f, ctx);
  MatrixXcd p = MatrixXcd::Zero(g.cols(), f.cols());
  for (std::size_t i = 0; i < quad_.size(); ++i) {
    const auto& node = quad_.nodes[i];
    p.noalias() += node.weight * g.at(node.point.param).adjoint() * mf[i];
  }
  return p;
}

cplx weyl_pairing(const MatrixField& g, const MatrixField& f, const KernelContext& ctx, const WeylOperator& op) {
  if (g.cols() != 1 || f.cols() != 1) throw InvalidInput("weyl_pairing: expects single-column densities");
  return op.pairing(g, f, ctx)(0, 0);
}

BSMatrix bs_matrix(const ReducedCoupling& rc, const KernelContext& ctx, const WeylOperator& op) {
  BSMatrix b;
  b.z = ctx.z;
  b.order = op.quadrature().order;
  if (rc.empty()) {
    b.T.resize(0, 0);
    return b;
  }
  if (!rc.basis_field || !rc.G_field) throw InvalidInput("bs_matrix: coupling lacks analytic fields");
  // G = 0 leaves T = 0 without touching the Weyl operator
  if (rc.G_field->matrix.isZero(0) || (rc.G_field->profile.is_constant() && rc.G_field->profile.constant == 0)) {
    require_resolvent_set(ctx);
    b.T = MatrixXcd::Zero(rc.rank, rc.rank);
    return b;
  }
  const MatrixXcd Y = op.pairing(*rc.G_field, *rc.basis_field, ctx);
  b.T = rc.coefficients.transpose() * Y;
  return b;
}

BSMatrix bs_matrix_estimated(const ReducedCoupling& rc, const KernelContext& ctx, const WeylOperator& op) {
  BSMatrix b = bs_matrix(rc, ctx, op);
  if (rc.empty()) {
    b.error_estimate = 0;
    return b;
  }
  const int coarse = std::max(4, op.quadrature().order / 2);
  SingularRuleOptions o = op.options();
  if (op.surface().dimension() == 3) {
    o.polar_points = std::max(4, o.polar_points / 2);
    o.azimuth_points = std::max(4, o.azimuth_points / 2);
  }
  const WeylOperator half(op.surface(), coarse, o);
  b.error_estimate = (b.T - bs_matrix(rc, ctx, half).T).cwiseAbs().maxCoeff();
  return b;
}

MatrixXcd weyl_gram(const ReducedCoupling& rc, const KernelContext& ctx, const WeylOperator& op) {
  if (rc.empty()) return MatrixXcd(0, 0);
  return op.pairing(*rc.basis_field, *rc.basis_field, ctx);
}

FieldSamples gamma_apply(const VectorXcd& a, const ReducedCoupling& rc, const KernelContext& ctx,
                         const std::vector<Point>& points, const SurfaceQuadrature& q, double delta_min) {
  if (a.size() != rc.rank) throw InvalidInput("gamma_apply: coefficient vector has wrong length");
  if (!rc.basis_field) throw InvalidInput("gamma_apply: coupling lacks analytic fields");
  require_resolvent_set(ctx);
  FieldSamples out;
  out.delta_min = delta_min >= 0 ? delta_min : 2 * q.spacing;
  const int N = spinor_size(ctx.dimension);
  const std::size_t np = points.size();
  out.values.assign(np, VectorXcd::Zero(N));
  out.too_close.assign(np, false);
  if (rc.empty()) return out;

  // density psi = (F W) a at the nodes
  std::vector<VectorXcd> psi(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    psi[i] = q.nodes[i].weight * (rc.basis_field->at(q.nodes[i].point.param) * a);

  auto run = [&](auto dim_tag) {
    constexpr int Dim = decltype(dim_tag)::value;
    using Vec = typename Spinor<Dim>::Vector;
    with_resolvent<Dim>(ctx, [&](const auto& R) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::size_t p = 0; p < np; ++p) {
        double dmin = std::numeric_limits<double>::max();
        for (const auto& node : q.nodes) dmin = std::min(dmin, (points[p] - node.point.x).norm());
        if (dmin < out.delta_min) {
          out.too_close[p] = true;
          continue;
        }
        Vec u = Vec::Zero();
        for (std::size_t i = 0; i < q.size(); ++i) u.noalias() += R(points[p] - q.nodes[i].point.x) * Vec(psi[i]);
        out.values[p] = u;
      }
      return 0;
    });
  };
  if (ctx.dimension == 2)
    run(std::integral_constant<int, 2>{});
  else
    run(std::integral_constant<int, 3>{});
  return out;
}

double circle_phi(double R, const KernelContext& ctx) {
  require_gap_energy(ctx, "circle_phi");
  if (!(R > 0)) throw InvalidInput("circle_phi: radius must be positive");
  const double kappa = ctx.kappa().real();
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double psi) { return boost::math::cyl_bessel_k(0, 2 * kappa * R * std::sin(psi / 2)); };
  return 2 * R * R * ts.integrate(f, 0.0, kPi);
}

double sphere_phi(double R, const KernelContext& ctx) {
  require_gap_energy(ctx, "sphere_phi");
  if (!(R > 0)) throw InvalidInput("sphere_phi: radius must be positive");
  const double kappa = ctx.kappa().real();
  return 4 * kPi * R * R * (-std::expm1(-2 * kappa * R)) / (2 * kappa);
}

BSMatrix circle_fourier_oracle(double R, const KernelContext& ctx, const MatrixXcd& L) {
  if (ctx.dimension != 2) throw InvalidInput("circle_fourier_oracle: requires n = 2");
  if (L.rows() != 2 || L.cols() != 2) throw InvalidInput("circle_fourier_oracle: L must be 2x2");
  BSMatrix b;
  b.z = ctx.z;
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = ctx.z + ctx.mass;
  d(1, 1) = ctx.z - ctx.mass;
  b.T = L * (circle_phi(R, ctx) * d);
  return b;
}

BSMatrix sphere_closed_form_oracle(double R, const KernelContext& ctx, const MatrixXcd& L) {
  if (ctx.dimension != 3) throw InvalidInput("sphere_closed_form_oracle: requires n = 3");
  if (L.rows() != 4 || L.cols() != 4) throw InvalidInput("sphere_closed_form_oracle: L must be 4x4");
  BSMatrix b;
  b.z = ctx.z;
  MatrixXcd d = MatrixXcd::Zero(4, 4);
  d.diagonal() << ctx.z + ctx.mass, ctx.z + ctx.mass, ctx.z - ctx.mass, ctx.z - ctx.mass;
  b.T = L * (sphere_phi(R, ctx) * d);
  return b;
}

}  // namespace diracshell
