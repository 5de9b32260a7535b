#include "diracshell/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "diracshell/bessel_reference.hpp"

namespace diracshell {

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json to_json(cplx v) { return {v.real(), v.imag()}; }

json to_json(const VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const Eigenpair& e) {
  return {
      {"z", e.z},
      {"det_residual", e.det_residual},
      {"sigma_min", e.sigma_min},
      {"sigma_second", e.sigma_second},
      {"null_vector", to_json(e.null_vector)},
      {"null_residual", e.null_residual},
      {"multiplicity", e.multiplicity},
      {"multiplicity_uncertain", e.multiplicity_uncertain},
      {"gap_edge", e.gap_edge},
      {"stability_delta", e.stability_delta},
  };
}

json record_header(const RunConfig& c, const std::string& command) {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"config", c.echo},
          {"config_hash", config_hash(c.echo)}};
}

std::string output_path(const RunConfig& c, const std::string& out_dir, const std::string& suffix) {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / (c.prefix + "_" + suffix)).string();
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const Eigenpair& pick_eigenvalue(const RunConfig& c, const ExactSolution& sol) {
  const auto& ev = sol.result.eigenvalues;
  if (ev.empty()) throw NumericalFailure("no eigenvalue in the gap for this configuration");
  if (c.eigen_index >= static_cast<int>(ev.size()))
    throw ConfigError("numerics.eigen_index", "index " + std::to_string(c.eigen_index) + " out of range (" +
                                                  std::to_string(ev.size()) + " eigenvalues found)");
  return ev[c.eigen_index];
}

// ---- self-test -------------------------------------------------------------

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

Point random_point(std::mt19937& gen, int dim) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.3, 2.0);
  Point p = Point::Zero();
  for (int k = 0; k < dim; ++k) p(k) = nd(gen);
  return ud(gen) * p / p.norm();
}

VectorXcd random_spinor(std::mt19937& gen, int N) {
  std::normal_distribution<double> nd;
  VectorXcd a(N);
  for (int i = 0; i < N; ++i) a(i) = cplx(nd(gen), nd(gen));
  return a / a.norm();
}

}  // namespace

std::vector<SelftestCheck> run_selftest(unsigned seed) {
  std::vector<SelftestCheck> checks;
  std::mt19937 gen(seed);

  {
    double real_err = 0, cplx_err = 0;
    for (const auto& r : kBesselReference) {
      const cplx k0(r.k0_re, r.k0_im), k1(r.k1_re, r.k1_im);
      if (r.w_im == 0) {
        real_err = std::max({real_err, rel(bessel_k(0, r.w_re), k0), rel(bessel_k(1, r.w_re), k1)});
      } else {
        const cplx w(r.w_re, r.w_im);
        cplx_err = std::max({cplx_err, rel(bessel_k(0, w), k0), rel(bessel_k(1, w), k1)});
      }
    }
    checks.push_back({"bessel_reference_real_axis", real_err, 1e-12});
    checks.push_back({"bessel_reference_complex", cplx_err, 1e-10});
  }
  {
    // K_1 = -K_0' by Richardson-extrapolated central differences
    double err = 0;
    for (double x = 0.1; x <= 10.0; x *= 1.25) {
      const double h = 1e-3 * x;
      auto d = [&](double s) { return (bessel_k(0, x + s) - bessel_k(0, x - s)) / (2 * s); };
      const double deriv = (4 * d(h / 2) - d(h)) / 3;
      err = std::max(err, std::abs(-deriv - bessel_k(1, x)) / bessel_k(1, x));
    }
    checks.push_back({"bessel_k1_is_minus_k0_derivative", err, 1e-8});
    const double w = 1e-8;
    checks.push_back({"bessel_small_argument_w_k1", std::abs(w * bessel_k(1, w) - 1), 1e-12});
  }
  for (int n : {2, 3}) {
    const AlphaSet a = alpha_matrices(n);
    std::vector<MatrixXcd> all(a.alpha.begin(), a.alpha.begin() + n);
    all.push_back(a.alpha0);
    const int N = a.spinor_size;
    double defect = 0;
    for (std::size_t j = 0; j < all.size(); ++j) {
      defect = std::max(defect, (all[j] - all[j].adjoint()).cwiseAbs().maxCoeff());
      for (std::size_t k = 0; k < all.size(); ++k) {
        const MatrixXcd expect = (j == k ? 2.0 : 0.0) * MatrixXcd::Identity(N, N);
        defect = std::max(defect, (all[j] * all[k] + all[k] * all[j] - expect).cwiseAbs().maxCoeff());
      }
    }
    checks.push_back({"alpha_algebra_n" + std::to_string(n), defect, 0.0});
  }
  for (int n : {2, 3}) {
    double conj = 0, pde = 0, fixed = 0;
    for (double zr : {0.0, 0.5, -0.5}) {
      const KernelContext ctx(n, 1.0, zr);
      for (int s = 0; s < 5; ++s) {
        const Point x = random_point(gen, n);
        const MatrixXcd R = resolvent_kernel(x.head(n), ctx);
        conj = std::max(conj, (R.adjoint() - resolvent_kernel(-x.head(n), ctx)).cwiseAbs().maxCoeff());
        const MatrixXcd Rf = n == 2 ? with_resolvent<2>(ctx, [&](const auto& r) { return MatrixXcd(r(x)); })
                                    : with_resolvent<3>(ctx, [&](const auto& r) { return MatrixXcd(r(x)); });
        fixed = std::max(fixed, (Rf - R).cwiseAbs().maxCoeff() / R.cwiseAbs().maxCoeff());
        const VectorXcd a = random_spinor(gen, spinor_size(n));
        auto u = [&](const Point& p) -> VectorXcd { return resolvent_kernel(p.head(n), ctx) * a; };
        const FDResult r = free_dirac_fd(u, x, n, ctx.mass, ctx.z, 2e-3 * x.norm());
        pde = std::max(pde, r.value.norm() / r.scale);
      }
    }
    const std::string sfx = "_n" + std::to_string(n);
    checks.push_back({"kernel_conjugation_symmetry" + sfx, conj, 1e-13});
    checks.push_back({"kernel_fixed_size_evaluator" + sfx, fixed, 1e-13});
    checks.push_back({"kernel_pde_residual" + sfx, pde, 1e-6});
  }
  return checks;
}

// ---- exact pipeline --------------------------------------------------------

ExactSolution::ExactSolution(const RunConfig& c)
    : surface(c.shape), op(surface, c.surface_order, c.singular) {
  rc = reduce_coupling(c.coupling, op.quadrature(), c.rank_tol);
  if (!rc.hermiticity.hermitian) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "F(x)G(y)* != G(x)F(y)*: defect %.3e exceeds 1e-10 x scale %.3e; the operator is not self-adjoint",
                  rc.hermiticity.defect, rc.hermiticity.scale);
    throw ConfigError("coupling", buf);
  }
  T = exact_bs_function(rc, op, c.mass);
  const auto trace = det_scan(T, gap_grid(c.mass, c.scan_points, c.margin), c.mass);
  result = find_eigenvalues(trace, T, c.mass, rc.rank, true, c.roots);
  if (result.counted() > rc.rank)
    throw NumericalFailure("found " + std::to_string(result.counted()) + " eigenvalues but the rank is " +
                           std::to_string(rc.rank) + "; refine the quadrature");
}

json cmd_solve(const RunConfig& c, const std::string& out_dir) {
  Stopwatch clock;
  ExactSolution sol(c);
  const double t_solve = clock.seconds();

  // stability: the same roots at half the surface order
  const int half_order = std::max(4, c.surface_order / 2);
  if (c.stability_check && !sol.result.eigenvalues.empty()) {
    WeylOperator half(sol.surface, half_order, c.singular);
    const ReducedCoupling rc_half = reduce_coupling(c.coupling, half.quadrature(), c.rank_tol);
    const BSFunction T_half = exact_bs_function(rc_half, half, c.mass);
    const double edge = std::abs(c.mass) * (1 - c.margin);
    for (auto& e : sol.result.eigenvalues) {
      const double z2 = e.multiplicity_uncertain
                            ? refine_dip(T_half, e.z, std::max(-edge, e.z - 1e-2), std::min(edge, e.z + 1e-2))
                            : track_root(T_half, e.z, -edge, edge, c.roots.tol);
      e.stability_delta = std::isnan(z2) ? std::numeric_limits<double>::infinity() : std::abs(z2 - e.z);
    }
  }
  const double t_stability = clock.seconds() - t_solve;

  double t_err = std::numeric_limits<double>::quiet_NaN();
  if (!sol.rc.empty())
    t_err = bs_matrix_estimated(sol.rc, KernelContext(c.dimension, c.mass, 0.0), sol.op).error_estimate;

  const std::string scan_file = output_path(c, out_dir, "scan.csv");
  {
    std::ofstream out(scan_file);
    out << "z,re_det,im_det\n";
    for (const auto& p : sol.result.trace) out << fmt(p.z) << ',' << fmt(p.det.real()) << ',' << fmt(p.det.imag()) << '\n';
  }

  json ev = json::array();
  for (const auto& e : sol.result.eigenvalues) ev.push_back(to_json(e));
  json rec = record_header(c, "solve");
  rec["hermitian"] = sol.rc.hermiticity.hermitian;
  rec["hermiticity_defect"] = sol.rc.hermiticity.defect;
  rec["rank"] = sol.rc.rank;
  rec["eigenvalues"] = ev;
  rec["eigenvalue_count"] = sol.result.counted();
  rec["scan"] = {{"file", std::filesystem::path(scan_file).filename().string()},
                 {"points", sol.result.trace.size()},
                 {"max_imag_residue", sol.result.max_imag_residue}};
  rec["quadrature"] = {{"order", c.surface_order},
                       {"nodes", sol.op.quadrature().size()},
                       {"total_measure", sol.op.quadrature().total_measure()},
                       {"T_error_estimate_z0", t_err},
                       {"stability_order", c.stability_check ? half_order : 0}};
  rec["timing"] = {{"solve_s", t_solve}, {"stability_s", t_stability}, {"total_s", clock.seconds()}};
  write_json(output_path(c, out_dir, "solve.json"), rec);
  return rec;
}

json cmd_approx(const RunConfig& c, const std::string& out_dir) {
  Stopwatch clock;
  {
    const Surface s(c.shape);
    for (double eps : c.eps_list) {
      try {
        require_admissible_width(s, eps);
      } catch (const InvalidInput& e) {
        throw ConfigError("numerics.eps", e.what());
      }
    }
  }
  ExactSolution sol(c);
  const Eigenpair& target = pick_eigenvalue(c, sol);
  const double t_exact = clock.seconds();

  const TransverseProfile v = make_profile(c.profile);
  const SweepResult sw =
      convergence_sweep(sol.surface, sol.rc, c.mass, target.z, sol.T(target.z), v, c.eps_list, c.eps);

  bool monotone = true;
  for (std::size_t i = 1; i < sw.rows.size(); ++i)
    if (!(sw.rows[i].abs_err < 1.1 * sw.rows[i - 1].abs_err)) monotone = false;

  const std::string sweep_file = output_path(c, out_dir, "sweep.csv");
  json rows = json::array();
  {
    std::ofstream out(sweep_file);
    out << "eps,z_eps,abs_err,fit_rate\n";
    for (const auto& r : sw.rows) {
      out << fmt(r.eps) << ',' << fmt(r.z_eps) << ',' << fmt(r.abs_err) << ',' << fmt(r.fit_rate) << '\n';
      json row = {{"eps", r.eps}, {"z_eps", r.z_eps}, {"abs_err", r.abs_err}, {"bs_diff", r.bs_diff},
                  {"fit_rate", r.fit_rate}};
      if (c.eps_convergence_check) {
        const EpsBSMatrix m = eps_bs_matrix(sol.rc, KernelContext(c.dimension, c.mass, target.z), sol.surface, v,
                                            r.eps, c.eps, true);
        row["quadrature_delta"] = m.convergence_delta;
        row["quadrature_converged"] = m.converged;
      }
      rows.push_back(row);
    }
  }

  json rec = record_header(c, "approx");
  rec["rank"] = sol.rc.rank;
  rec["z_star"] = target.z;
  rec["eigen_index"] = c.eigen_index;
  rec["profile"] = v.name();
  rec["sweep"] = rows;
  rec["sweep_file"] = std::filesystem::path(sweep_file).filename().string();
  rec["fitted_order"] = sw.fitted_order;
  rec["monotone_decreasing"] = monotone;
  rec["timing"] = {{"exact_s", t_exact}, {"sweep_s", clock.seconds() - t_exact}, {"total_s", clock.seconds()}};
  write_json(output_path(c, out_dir, "approx.json"), rec);
  return rec;
}

json cmd_eigenfunction(const RunConfig& c, const std::string& out_dir) {
  Stopwatch clock;
  ExactSolution sol(c);
  const Eigenpair& target = pick_eigenvalue(c, sol);
  const int n = c.dimension;
  const auto points = grid_points(c.grid, n);
  EigenfunctionSamples ef;
  try {
    ef = eigenfunction(sol.result, c.eigen_index, sol.rc, sol.op.quadrature(), points, grid_cell_volume(c.grid, n));
  } catch (const NumericalFailure& e) {
    throw ConfigError("numerics.grid_min", e.what());
  }
  Point dir(c.decay_direction[0], c.decay_direction[1], c.decay_direction[2]);
  const DecayFit fit = eigenfunction_decay(sol.result, c.eigen_index, sol.rc, sol.op.quadrature(), dir / dir.norm());

  const std::string file = output_path(c, out_dir, "eigenfunction.csv");
  int collar = 0;
  {
    std::ofstream out(file);
    out << (n == 2 ? "x,y" : "x,y,z") << ",collar,abs_u";
    const int N = spinor_size(n);
    for (int k = 0; k < N; ++k) out << ",re_u" << k << ",im_u" << k;
    out << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (int a = 0; a < n; ++a) out << fmt(points[i](a)) << ',';
      collar += ef.collar[i];
      out << (ef.collar[i] ? 1 : 0) << ',' << fmt(ef.values[i].norm());
      for (int k = 0; k < N; ++k) out << ',' << fmt(ef.values[i](k).real()) << ',' << fmt(ef.values[i](k).imag());
      out << '\n';
    }
  }

  json rec = record_header(c, "eigenfunction");
  rec["z"] = target.z;
  rec["eigen_index"] = c.eigen_index;
  rec["file"] = std::filesystem::path(file).filename().string();
  rec["points"] = points.size();
  rec["collar_points"] = collar;
  rec["collar_width"] = ef.delta_min;
  rec["norm_before_normalization"] = ef.norm;
  rec["decay_fit"] = {{"rate", fit.rate},
                      {"expected", fit.expected},
                      {"relative_error", std::abs(fit.rate - fit.expected) / fit.expected},
                      {"r_squared", fit.r_squared},
                      {"r_min", fit.r_min},
                      {"r_max", fit.r_max}};
  rec["timing"] = {{"total_s", clock.seconds()}};
  write_json(output_path(c, out_dir, "eigenfunction.json"), rec);
  return rec;
}

json cmd_oracle_compare(const RunConfig& c, const std::string& out_dir) {
  Stopwatch clock;
  const bool circle = c.shape.kind == ShapeKind::Circle;
  if (!circle && c.shape.kind != ShapeKind::Sphere)
    throw ConfigError("surface.shape", "oracle-compare needs a circle or a sphere");
  const int N = spinor_size(c.dimension);
  const MatrixField& F = c.coupling.F;
  if (!F.profile.is_constant() || F.profile.constant != 1.0 || !F.matrix.isIdentity(0))
    throw ConfigError("coupling.F", "oracle-compare needs F = identity with a constant profile");
  MatrixXcd L;
  if (c.coupling.L) {
    L = *c.coupling.L;
  } else {
    if (!c.coupling.G.profile.is_constant()) throw ConfigError("coupling.G", "oracle-compare needs a constant G");
    L = c.coupling.G.profile.constant * c.coupling.G.matrix;
  }
  const double R = c.shape.radius;
  const int n = c.dimension;
  auto oracle_T = [&](double z) {
    const KernelContext ctx(n, c.mass, z);
    return (circle ? circle_fourier_oracle(R, ctx, L) : sphere_closed_form_oracle(R, ctx, L)).T;
  };

  ExactSolution sol(c);
  if (sol.rc.rank != N) throw ConfigError("coupling.F", "oracle-compare needs a full-rank F");

  json tdiff = json::array();
  double max_tdiff = 0;
  for (double zr : {0.0, 0.5, -0.5}) {
    const double z = zr * c.mass;
    const double d = (sol.T(z) - oracle_T(z)).cwiseAbs().maxCoeff();
    max_tdiff = std::max(max_tdiff, d);
    tdiff.push_back({{"z", z}, {"max_entry_diff", d}});
  }

  const BSFunction To = oracle_T;
  const auto trace = det_scan(To, gap_grid(c.mass, c.scan_points, c.margin), c.mass);
  const SpectralResult ores = find_eigenvalues(trace, To, c.mass, N, true, c.roots);
  json roots = json::array();
  double max_root_diff = 0;
  const bool same_count = ores.eigenvalues.size() == sol.result.eigenvalues.size();
  for (std::size_t i = 0; i < std::max(ores.eigenvalues.size(), sol.result.eigenvalues.size()); ++i) {
    json r;
    if (i < sol.result.eigenvalues.size()) r["solver"] = sol.result.eigenvalues[i].z;
    if (i < ores.eigenvalues.size()) r["oracle"] = ores.eigenvalues[i].z;
    if (same_count) {
      const double d = std::abs(sol.result.eigenvalues[i].z - ores.eigenvalues[i].z);
      r["abs_diff"] = d;
      max_root_diff = std::max(max_root_diff, d);
    }
    roots.push_back(r);
  }

  json rec = record_header(c, "oracle-compare");
  rec["oracle"] = circle ? "circle_fourier" : "sphere_closed_form";
  rec["T_comparison"] = tdiff;
  rec["max_T_diff"] = max_tdiff;
  rec["roots"] = roots;
  rec["same_root_count"] = same_count;
  rec["max_root_diff"] = same_count ? json(max_root_diff) : json(nullptr);
  rec["timing"] = {{"total_s", clock.seconds()}};
  write_json(output_path(c, out_dir, "oracle_compare.json"), rec);
  return rec;
}

}  // namespace diracshell
