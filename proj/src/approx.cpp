#include "diracshell/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace diracshell {

namespace {
constexpr double kPi = std::numbers::pi;
}

TransverseProfile::TransverseProfile(Kind kind) : kind_(kind) {
  switch (kind_) {
    case Kind::Uniform: breaks_ = {-1, 1}; break;
    case Kind::Triangle: breaks_ = {-1, 0, 1}; break;
    case Kind::Cosine: breaks_ = {-1, 1}; break;
    case Kind::AsymmetricUniform: breaks_ = {-1, 1.0 / 3}; break;
  }
}

std::string TransverseProfile::name() const {
  switch (kind_) {
    case Kind::Uniform: return "uniform";
    case Kind::Triangle: return "triangle";
    case Kind::Cosine: return "cosine";
    case Kind::AsymmetricUniform: return "asymmetric-uniform";
  }
  return "";
}

double TransverseProfile::operator()(double t) const {
  if (t < breaks_.front() || t > breaks_.back()) return 0;
  switch (kind_) {
    case Kind::Uniform: return 0.5;
    case Kind::Triangle: return 1 - std::abs(t);
    case Kind::Cosine: return 0.5 * (1 + std::cos(kPi * t));
    case Kind::AsymmetricUniform: return 0.75;
  }
  return 0;
}

double TransverseProfile::cumulative(double t) const {
  if (t <= breaks_.front()) return 0;
  if (t >= breaks_.back()) return 1;
  switch (kind_) {
    case Kind::Uniform: return 0.5 * (t + 1);
    case Kind::Triangle: return t < 0 ? 0.5 * (1 + t) * (1 + t) : 1 - 0.5 * (1 - t) * (1 - t);
    case Kind::Cosine: return 0.5 * (t + 1) + std::sin(kPi * t) / (2 * kPi);
    case Kind::AsymmetricUniform: return 0.75 * (t + 1);
  }
  return 0;
}

GaussRule TransverseProfile::nodes(int per_piece) const {
  GaussRule r;
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
    const GaussRule g = gauss_legendre(per_piece, breaks_[k], breaks_[k + 1]);
    r.x.insert(r.x.end(), g.x.begin(), g.x.end());
    r.w.insert(r.w.end(), g.w.begin(), g.w.end());
  }
  return r;
}

const std::vector<std::string>& profile_kinds() {
  static const std::vector<std::string> k = {"uniform", "triangle", "cosine", "asymmetric-uniform"};
  return k;
}

TransverseProfile make_profile(const std::string& kind) {
  if (kind == "uniform") return TransverseProfile(TransverseProfile::Kind::Uniform);
  if (kind == "triangle") return TransverseProfile(TransverseProfile::Kind::Triangle);
  if (kind == "cosine") return TransverseProfile(TransverseProfile::Kind::Cosine);
  if (kind == "asymmetric-uniform") return TransverseProfile(TransverseProfile::Kind::AsymmetricUniform);
  throw InvalidInput("unknown transverse profile '" + kind + "'");
}

double sgn_pairing(const TransverseProfile& v, int per_piece) {
  const GaussRule g = v.nodes(per_piece);
  double s = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * v(g.x[i]) * (2 * v.cumulative(g.x[i]) - 1);
  return s;
}

double sgn_pairing_direct(const TransverseProfile& v, int per_piece) {
  const GaussRule g = v.nodes(per_piece);
  const std::size_t n = g.x.size();
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = g.w[i] * v(g.x[i]);
  double s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g.x[i] > g.x[j]) s += a[i] * a[j];
      if (g.x[i] < g.x[j]) s -= a[i] * a[j];
    }
  return s;
}

namespace {

// Node in the inner (angle, s) parameter plane; angle is t (curves) or the
// geodesic polar angle (surfaces).
struct InnerNode {
  double a, s, w;
};

struct Rect {
  double a0, a1, s0, s1;
};

class InnerRule {
 public:
  InnerRule(double scale_a, double scale_s, const EpsOptions& opt)
      : sa_(scale_a), ss_(scale_s), opt_(opt), tensor_(gauss_legendre(opt.panel_points, 0.0, 1.0)),
        duffy_(gauss_legendre(opt.duffy_points, 0.0, 1.0)) {}

  void add(const Rect& r, double ap, double sp, std::vector<InnerNode>& out, int depth = 0) const {
    const double lx = sa_ * (r.a1 - r.a0), ly = ss_ * (r.s1 - r.s0);
    if (lx <= 0 || ly <= 0) return;
    const bool corner = (r.a0 == ap || r.a1 == ap) && (r.s0 == sp || r.s1 == sp);
    if (corner) {
      if (depth < opt_.max_depth && lx > 2 * ly) {
        const double m = (r.a0 + r.a1) / 2;
        add({r.a0, m, r.s0, r.s1}, ap, sp, out, depth + 1);
        add({m, r.a1, r.s0, r.s1}, ap, sp, out, depth + 1);
      } else if (depth < opt_.max_depth && ly > 2 * lx) {
        const double m = (r.s0 + r.s1) / 2;
        add({r.a0, r.a1, r.s0, m}, ap, sp, out, depth + 1);
        add({r.a0, r.a1, m, r.s1}, ap, sp, out, depth + 1);
      } else {
        duffy(r, ap, sp, out);
      }
      return;
    }
    const double da = std::max({0.0, r.a0 - ap, ap - r.a1}) * sa_;
    const double ds = std::max({0.0, r.s0 - sp, sp - r.s1}) * ss_;
    const double dist = std::hypot(da, ds), diam = std::hypot(lx, ly);
    if (dist >= opt_.eta * diam || depth >= opt_.max_depth) {
      tensor(r, out);
      return;
    }
    if (lx >= ly) {
      const double m = (r.a0 + r.a1) / 2;
      add({r.a0, m, r.s0, r.s1}, ap, sp, out, depth + 1);
      add({m, r.a1, r.s0, r.s1}, ap, sp, out, depth + 1);
    } else {
      const double m = (r.s0 + r.s1) / 2;
      add({r.a0, r.a1, r.s0, m}, ap, sp, out, depth + 1);
      add({r.a0, r.a1, m, r.s1}, ap, sp, out, depth + 1);
    }
  }

 private:
  void tensor(const Rect& r, std::vector<InnerNode>& out) const {
    const double ha = r.a1 - r.a0, hs = r.s1 - r.s0;
    for (std::size_t i = 0; i < tensor_.x.size(); ++i)
      for (std::size_t j = 0; j < tensor_.x.size(); ++j)
        out.push_back({r.a0 + ha * tensor_.x[i], r.s0 + hs * tensor_.x[j], ha * hs * tensor_.w[i] * tensor_.w[j]});
  }

  // Two triangles sharing the singular corner c; x(tau, lam) = c + tau (p1 - c + lam (p2 - p1)).
  void duffy(const Rect& r, double ap, double sp, std::vector<InnerNode>& out) const {
    const double ao = r.a0 == ap ? r.a1 : r.a0;
    const double so = r.s0 == sp ? r.s1 : r.s0;
    const double corners[2][2][2] = {{{ao, sp}, {ao, so}}, {{ap, so}, {ao, so}}};
    for (const auto& tri : corners) {
      const double p1a = tri[0][0], p1s = tri[0][1], p2a = tri[1][0], p2s = tri[1][1];
      const double det = std::abs((p1a - ap) * (p2s - p1s) - (p1s - sp) * (p2a - p1a));
      for (std::size_t i = 0; i < duffy_.x.size(); ++i) {
        const double tau = duffy_.x[i];
        for (std::size_t j = 0; j < duffy_.x.size(); ++j) {
          const double lam = duffy_.x[j];
          const double a = ap + tau * (p1a - ap + lam * (p2a - p1a));
          const double s = sp + tau * (p1s - sp + lam * (p2s - p1s));
          out.push_back({a, s, tau * det * duffy_.w[i] * duffy_.w[j]});
        }
      }
    }
  }

  double sa_, ss_;
  const EpsOptions& opt_;
  GaussRule tensor_;
  GaussRule duffy_;
};

// Inner parameter cells: angle range split at the target, s range split at the
// profile breaks and at u.
std::vector<Rect> initial_cells(double a_lo, double a_hi, double ap, const std::vector<double>& breaks, double u) {
  std::vector<double> sb = breaks;
  if (u > breaks.front() && u < breaks.back()) sb.push_back(u);
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  std::vector<double> ab = {a_lo};
  if (ap > a_lo && ap < a_hi) ab.push_back(ap);
  ab.push_back(a_hi);
  std::vector<Rect> cells;
  for (std::size_t i = 0; i + 1 < ab.size(); ++i)
    for (std::size_t j = 0; j + 1 < sb.size(); ++j) cells.push_back({ab[i], ab[i + 1], sb[j], sb[j + 1]});
  return cells;
}

void tangent_frame(const Point& s, Point& e1, Point& e2) {
  const Point ref = std::abs(s(2)) < 0.9 ? Point(0, 0, 1) : Point(1, 0, 0);
  e1 = ref.cross(s).normalized();
  e2 = s.cross(e1);
}

}  // namespace

EpsAssembler::EpsAssembler(const Surface& s, const ReducedCoupling& rc, const TransverseProfile& v, double eps,
                           EpsOptions opt)
    : surface_(s), rc_(&rc), profile_(v), eps_(eps), opt_(opt), quad_(surface_quadrature(s, opt.surface_order)),
      transverse_(v.nodes(opt.transverse_points)) {
  require_admissible_width(s, eps);
  if (!rc.empty() && (!rc.basis_field || !rc.G_field))
    throw InvalidInput("EpsAssembler: coupling lacks analytic fields");
  if (opt_.azimuth_points % 2) ++opt_.azimuth_points;
}

template <int Dim>
MatrixXcd EpsAssembler::pairing_impl(const KernelContext& ctx) const {
  using Sp = Spinor<Dim>;
  using Mat = typename Sp::Matrix;
  const MatrixField& f = *rc_->basis_field;
  const MatrixField& g = *rc_->G_field;
  const int nx = static_cast<int>(quad_.size());
  const int nu = static_cast<int>(transverse_.x.size());
  const double eps = eps_;
  const bool use_w = opt_.use_weight;
  std::vector<Mat> partial(static_cast<std::size_t>(nx) * nu, Mat::Zero());
  std::size_t count = 0;

  with_resolvent<Dim>(ctx, [&](const auto& R) {
    std::size_t inner_count = 0;
    const std::vector<double>& breaks = profile_.breaks();
    if constexpr (Dim == 2) {
#pragma omp parallel for schedule(dynamic, 1) collapse(2) reduction(max : inner_count)
      for (int i = 0; i < nx; ++i) {
        for (int k = 0; k < nu; ++k) {
          const SurfacePoint& x = quad_.nodes[i].point;
          const double u = transverse_.x[k];
          const double t0 = std::atan2(x.param(1), x.param(0));
          const Point X_off = eps * u * x.normal;
          InnerRule rule(x.jacobian, eps, opt_);
          std::vector<InnerNode> nodes;
          for (const Rect& c : initial_cells(-kPi, kPi, 0.0, breaks, u)) rule.add(c, 0.0, u, nodes);
          inner_count = std::max(inner_count, nodes.size());
          Mat acc = Mat::Zero();
          for (const InnerNode& q : nodes) {
            const SurfacePoint y = surface_.at_angle(t0 + q.a);
            const double wy = use_w ? tubular_weight_unchecked(2, y, q.s, eps) : 1.0;
            const double w = q.w * profile_(q.s) * wy * y.jacobian * f.profile(y.param);
            acc.noalias() += w * R(surface_.chord(t0, q.a) + X_off - eps * q.s * y.normal);
          }
          partial[static_cast<std::size_t>(i) * nu + k] = acc;
        }
      }
    } else {
      const int na = opt_.azimuth_points;
      std::vector<double> ca(na), sa(na);
      for (int j = 0; j < na; ++j) {
        ca[j] = std::cos(2 * kPi * j / na);
        sa[j] = std::sin(2 * kPi * j / na);
      }
      const double wa = 2 * kPi / na;
#pragma omp parallel for schedule(dynamic, 1) collapse(2) reduction(max : inner_count)
      for (int i = 0; i < nx; ++i) {
        for (int k = 0; k < nu; ++k) {
          const SurfacePoint& x = quad_.nodes[i].point;
          const double u = transverse_.x[k];
          const Point X_off = eps * u * x.normal;
          Point e1, e2;
          tangent_frame(x.param, e1, e2);
          InnerRule rule(surface_.length_scale(), eps, opt_);
          std::vector<InnerNode> nodes;
          for (const Rect& c : initial_cells(0.0, kPi, 0.0, breaks, u)) rule.add(c, 0.0, u, nodes);
          inner_count = std::max(inner_count, nodes.size() * static_cast<std::size_t>(na));
          Mat acc = Mat::Zero();
          for (const InnerNode& q : nodes) {
            const double ct = std::cos(q.a), st = std::sin(q.a);
            const double vers = 2 * std::pow(std::sin(q.a / 2), 2);
            const double vs = profile_(q.s);
            for (int j = 0; j < na; ++j) {
              const Point e = ca[j] * e1 + sa[j] * e2;
              const SurfacePoint y = surface_.at(ct * x.param + st * e);
              const double wy = use_w ? tubular_weight_unchecked(3, y, q.s, eps) : 1.0;
              const double w = q.w * wa * st * vs * wy * y.jacobian * f.profile(y.param);
              const Point d = surface_.linear_image(vers * x.param - st * e) + X_off - eps * q.s * y.normal;
              acc.noalias() += w * R(d);
            }
          }
          partial[static_cast<std::size_t>(i) * nu + k] = acc;
        }
      }
    }
    count = inner_count;
    return 0;
  });
  last_inner_count_ = count;

  // outer sum in fixed order: Y = sum W_o p_g(x) M_g^* A(x, u) M_f
  Mat total = Mat::Zero();
  for (int i = 0; i < nx; ++i) {
    const QuadratureNode& node = quad_.nodes[i];
    const double pg = g.profile(node.point.param);
    for (int k = 0; k < nu; ++k) {
      const double u = transverse_.x[k];
      const double wx = use_w ? tubular_weight_unchecked(Dim, node.point, u, eps) : 1.0;
      total += (node.weight * transverse_.w[k] * profile_(u) * wx * pg) * partial[static_cast<std::size_t>(i) * nu + k];
    }
  }
  return g.matrix.adjoint() * total * f.matrix;
}

MatrixXcd EpsAssembler::T(const KernelContext& ctx) const {
  if (ctx.dimension != surface_.dimension()) throw InvalidInput("EpsAssembler: dimension mismatch");
  require_resolvent_set(ctx);
  if (rc_->empty()) return MatrixXcd(0, 0);
  const MatrixXcd Y = surface_.dimension() == 2 ? pairing_impl<2>(ctx) : pairing_impl<3>(ctx);
  return rc_->coefficients.transpose() * Y;
}

EpsBSMatrix eps_bs_matrix(const ReducedCoupling& rc, const KernelContext& ctx, const Surface& s,
                          const TransverseProfile& v, double eps, const EpsOptions& opt, bool check_convergence) {
  EpsBSMatrix out;
  out.eps = eps;
  out.z = ctx.z;
  out.options = opt;
  const EpsAssembler a(s, rc, v, eps, opt);
  out.T = a.T(ctx);
  if (check_convergence && out.T.size() > 0) {
    EpsOptions fine = opt;
    fine.surface_order *= 2;
    fine.transverse_points *= 2;
    fine.panel_points = fine.panel_points * 3 / 2;
    fine.duffy_points = fine.duffy_points * 3 / 2;
    fine.azimuth_points *= 2;
    const EpsAssembler b(s, rc, v, eps, fine);
    out.convergence_delta = (b.T(ctx) - out.T).cwiseAbs().maxCoeff();
    out.converged = out.convergence_delta <= 1e-3;
  }
  return out;
}

BSFunction eps_bs_function(const EpsAssembler& a, int dimension, double m) {
  return [&a, dimension, m](double z) { return a.T(KernelContext(dimension, m, z)); };
}

SweepResult convergence_sweep(const Surface& s, const ReducedCoupling& rc, double m, double z_star,
                              const MatrixXcd& T_star, const TransverseProfile& v,
                              const std::vector<double>& eps_list, const EpsOptions& opt) {
  if (eps_list.empty()) throw InvalidInput("convergence_sweep: empty eps list");
  for (double e : eps_list) require_admissible_width(s, e);
  SweepResult res;
  res.z_star = z_star;
  const double margin = 1e-3 * std::abs(m);
  for (double eps : eps_list) {
    const EpsAssembler a(s, rc, v, eps, opt);
    std::map<double, MatrixXcd> memo;
    BSFunction f = [&](double z) {
      auto it = memo.find(z);
      if (it != memo.end()) return it->second;
      return memo[z] = a.T(KernelContext(s.dimension(), m, z));
    };
    SweepRow row;
    row.eps = eps;
    row.bs_diff = rc.empty() ? 0.0 : (f(z_star) - T_star).cwiseAbs().maxCoeff();
    row.z_eps = track_root(f, z_star, -std::abs(m) + margin, std::abs(m) - margin, 1e-10);
    row.abs_err = std::abs(row.z_eps - z_star);
    if (!res.rows.empty()) {
      const SweepRow& p = res.rows.back();
      row.fit_rate = std::log(row.abs_err / p.abs_err) / std::log(row.eps / p.eps);
    }
    res.rows.push_back(row);
  }
  // least-squares slope of log err against log eps
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : res.rows) {
    if (!(r.abs_err > 0) || !std::isfinite(r.abs_err)) continue;
    const double x = std::log(r.eps), y = std::log(r.abs_err);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n >= 2) res.fitted_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return res;
}

}  // namespace diracshell
