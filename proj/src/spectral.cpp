#include "diracshell/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace diracshell {

namespace {

cplx det_of(const MatrixXcd& T) {
  if (T.size() == 0) return 1.0;
  return (MatrixXcd::Identity(T.rows(), T.cols()) + T).determinant();
}

// Refines a sign change of f on [a, b] to width tol.
double refine_bracket(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                      double tol) {
  if (fa == 0) return a;
  if (fb == 0) return b;
  std::uintmax_t iters = 200;
  auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  return (r.first + r.second) / 2;
}

}  // namespace

std::vector<double> gap_grid(double m, int points, double margin_rel) {
  if (points < 2) throw InvalidInput("gap_grid: need at least two points");
  if (!(m != 0)) throw InvalidInput("gap_grid: mass must be nonzero (empty gap)");
  const double a = std::abs(m), margin = margin_rel * a;
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = -a + margin + (2 * a - 2 * margin) * i / (points - 1);
  return g;
}

std::vector<ScanPoint> det_scan(const BSFunction& T, const std::vector<double>& grid, double m) {
  if (grid.empty()) throw InvalidInput("det_scan: empty grid");
  for (double z : grid)
    if (!(std::abs(z) < std::abs(m))) throw InvalidInput("det_scan: grid point outside the gap");
  std::vector<ScanPoint> trace(grid.size());
  const int n = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) trace[i] = {grid[i], det_of(T(grid[i]))};
  return trace;
}

BSFunction exact_bs_function(const ReducedCoupling& rc, const WeylOperator& op, double m) {
  const int dim = op.surface().dimension();
  return [&rc, &op, m, dim](double z) { return bs_matrix(rc, KernelContext(dim, m, z), op).T; };
}

double max_imag_residue(const std::vector<ScanPoint>& trace) {
  double r = 0;
  for (const auto& p : trace) r = std::max(r, std::abs(p.det.imag()) / (1 + std::abs(p.det)));
  return r;
}

int SpectralResult::counted() const {
  int c = 0;
  for (const auto& e : eigenvalues) c += e.multiplicity;
  return c;
}

Eigenpair analyze_root(double z, const MatrixXcd& T, double m, const RootOptions& opt) {
  Eigenpair e;
  e.z = z;
  const Eigen::Index n = T.rows();
  const MatrixXcd A = MatrixXcd::Identity(n, n) + T;
  e.det_residual = std::abs(A.determinant());
  Eigen::JacobiSVD<MatrixXcd> svd(A, Eigen::ComputeFullV);
  const VectorXd s = svd.singularValues();
  e.sigma_min = s(n - 1);
  e.sigma_second = n > 1 ? s(n - 2) : std::numeric_limits<double>::infinity();
  e.null_vector = svd.matrixV().col(n - 1);
  e.null_residual = (A * e.null_vector).norm();
  e.multiplicity = std::max<int>(1, static_cast<int>((s.array() < opt.singular_threshold).count()));
  e.multiplicity_uncertain = e.multiplicity > 1;
  e.gap_edge = std::abs(m) - std::abs(z) < opt.edge_fraction * std::abs(m);
  return e;
}

SpectralResult find_eigenvalues(const std::vector<ScanPoint>& trace, const BSFunction& T, double m, int rank,
                                bool hermitian, const RootOptions& opt) {
  if (!hermitian)
    throw InvalidInput("find_eigenvalues: coupling is not hermitian; complex determinant scans are not supported");
  SpectralResult res;
  res.mass = m;
  res.rank = rank;
  res.trace = trace;
  res.max_imag_residue = max_imag_residue(trace);
  if (rank == 0 || trace.size() < 2) return res;

  auto f = [&T](double z) { return det_of(T(z)).real(); };
  std::vector<std::pair<double, bool>> roots;  // z, found as a dip
  const std::size_t n = trace.size();
  std::vector<bool> near_sign_change(n, false);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double fa = trace[i].det.real(), fb = trace[i + 1].det.real();
    if (fa == 0 || (fa < 0) != (fb < 0)) {
      if (fa == 0 && i > 0 && trace[i - 1].det.real() == 0) continue;
      roots.emplace_back(refine_bracket(f, trace[i].z, trace[i + 1].z, fa, fb, opt.tol), false);
      near_sign_change[i] = near_sign_change[i + 1] = true;
    }
  }
  // interior local minima of |det| without a sign change nearby
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (near_sign_change[i - 1] || near_sign_change[i] || near_sign_change[i + 1]) continue;
    const double a = std::abs(trace[i].det.real());
    if (a > std::abs(trace[i - 1].det.real()) || a > std::abs(trace[i + 1].det.real())) continue;
    auto g = [&f](double z) { return std::abs(f(z)); };
    std::uintmax_t iters = 100;
    const auto r = boost::math::tools::brent_find_minima(g, trace[i - 1].z, trace[i + 1].z, 40, iters);
    if (r.second < opt.dip_threshold) roots.emplace_back(r.first, true);
  }
  std::sort(roots.begin(), roots.end());
  for (const auto& [z, dip] : roots) {
    Eigenpair e = analyze_root(z, T(z), m, opt);
    if (dip) e.multiplicity_uncertain = true;
    res.eigenvalues.push_back(std::move(e));
  }
  return res;
}

double track_root(const BSFunction& T, double guess, double lo, double hi, double tol, double first_step) {
  auto f = [&T](double z) { return det_of(T(z)).real(); };
  const double f0 = f(guess);
  if (f0 == 0) return guess;
  double step = first_step;
  double prev_left = guess, prev_right = guess, f_left = f0, f_right = f0;
  while (true) {
    bool moved = false;
    const double zr = std::min(hi, guess + step);
    if (zr > prev_right) {
      moved = true;
      const double fr = f(zr);
      if ((fr < 0) != (f_right < 0)) return refine_bracket(f, prev_right, zr, f_right, fr, tol);
      prev_right = zr;
      f_right = fr;
    }
    const double zl = std::max(lo, guess - step);
    if (zl < prev_left) {
      moved = true;
      const double fl = f(zl);
      if ((fl < 0) != (f_left < 0)) return refine_bracket(f, zl, prev_left, fl, f_left, tol);
      prev_left = zl;
      f_left = fl;
    }
    if (!moved) return std::numeric_limits<double>::quiet_NaN();
    step *= 2;
  }
}

double refine_dip(const BSFunction& T, double guess, double lo, double hi) {
  if (!(lo <= guess && guess <= hi)) throw InvalidInput("refine_dip: guess outside [lo, hi]");
  auto g = [&T](double z) { return std::abs(det_of(T(z)).real()); };
  std::uintmax_t iters = 100;
  return boost::math::tools::brent_find_minima(g, lo, hi, 40, iters).first;
}

EigenfunctionSamples eigenfunction(const SpectralResult& res, int index, const ReducedCoupling& rc,
                                   const SurfaceQuadrature& q, const std::vector<Point>& points,
                                   double cell_volume) {
  if (index < 0 || index >= static_cast<int>(res.eigenvalues.size()))
    throw InvalidInput("eigenfunction: eigenvalue index out of range");
  if (points.empty()) throw InvalidInput("eigenfunction: empty grid");
  const Eigenpair& e = res.eigenvalues[index];
  if (e.null_vector.size() == 0 || e.null_vector.norm() == 0)
    throw InvalidInput("eigenfunction: null vector must be nonzero");
  const KernelContext ctx(q.dimension, res.mass, e.z);
  FieldSamples f = gamma_apply(e.null_vector, rc, ctx, points, q);
  EigenfunctionSamples out;
  out.points = points;
  out.collar = f.too_close;
  out.delta_min = f.delta_min;
  double s = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!out.collar[i]) s += f.values[i].squaredNorm();
  if (cell_volume > 0) s *= cell_volume;
  out.norm = std::sqrt(s);
  if (!(out.norm > 0)) throw NumericalFailure("eigenfunction: all grid points lie in the surface collar");
  for (auto& v : f.values) v /= out.norm;
  out.values = std::move(f.values);
  return out;
}

DecayFit fit_decay(const std::vector<double>& r, const std::vector<double>& abs_u, int dimension) {
  const std::size_t n = r.size();
  if (n < 3 || abs_u.size() != n) throw InvalidInput("fit_decay: need at least three samples");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = std::log(abs_u[i]) + 0.5 * (dimension - 1) * std::log(r[i]);
  double mr = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mr += r[i] / n;
    my += y[i] / n;
  }
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (r[i] - mr) * (r[i] - mr);
    sxy += (r[i] - mr) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  DecayFit d;
  const double slope = sxy / sxx;
  d.rate = -slope;
  d.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  d.r_min = r.front();
  d.r_max = r.back();
  return d;
}

DecayFit eigenfunction_decay(const SpectralResult& res, int index, const ReducedCoupling& rc,
                             const SurfaceQuadrature& q, const Point& direction, int samples) {
  if (index < 0 || index >= static_cast<int>(res.eigenvalues.size()))
    throw InvalidInput("eigenfunction_decay: eigenvalue index out of range");
  const double z = res.eigenvalues[index].z;
  const double kappa = std::sqrt(res.mass * res.mass - z * z);
  double R = 0;
  for (const auto& n : q.nodes) R = std::max(R, n.point.x.norm());
  const Point dir = direction.normalized();
  std::vector<double> r(samples);
  std::vector<Point> pts(samples);
  for (int i = 0; i < samples; ++i) {
    r[i] = R + (8 + 8.0 * i / (samples - 1)) / kappa;
    pts[i] = r[i] * dir;
  }
  const KernelContext ctx(q.dimension, res.mass, z);
  FieldSamples f = gamma_apply(res.eigenvalues[index].null_vector, rc, ctx, pts, q);
  std::vector<double> a(samples);
  for (int i = 0; i < samples; ++i) a[i] = f.values[i].norm();
  DecayFit d = fit_decay(r, a, q.dimension);
  d.expected = kappa;
  return d;
}

}  // namespace diracshell
