#pragma once

#include <limits>
#include <string>
#include <vector>

#include "diracshell/gauss.hpp"
#include "diracshell/spectral.hpp"

namespace diracshell {

// Transverse profile v on (-1, 1) with int v = 1.
class TransverseProfile {
 public:
  enum class Kind { Uniform, Triangle, Cosine, AsymmetricUniform };

  explicit TransverseProfile(Kind kind);

  Kind kind() const { return kind_; }
  std::string name() const;
  double operator()(double t) const;
  // V(t) = int_{-1}^t v
  double cumulative(double t) const;
  // ends of the smooth pieces, ascending, first/last are the support ends
  const std::vector<double>& breaks() const { return breaks_; }
  // Gauss rule on the support, `per_piece` nodes on each smooth piece
  GaussRule nodes(int per_piece) const;

 private:
  Kind kind_;
  std::vector<double> breaks_;
};

// uniform | triangle | cosine | asymmetric-uniform
TransverseProfile make_profile(const std::string& kind);
const std::vector<std::string>& profile_kinds();

// int int v(u) sgn(u - s) v(s) du ds, via int v(u) (2 V(u) - 1) du.
double sgn_pairing(const TransverseProfile& v, int per_piece = 16);
// The same pairing as a plain double sum over a tensor Gauss rule.
double sgn_pairing_direct(const TransverseProfile& v, int per_piece = 16);

struct EpsOptions {
  int surface_order = 64;      // outer surface rule
  int transverse_points = 8;   // outer Gauss points per smooth piece of v
  int panel_points = 8;        // inner tensor Gauss points per side
  int duffy_points = 10;       // Gauss points per direction on the Duffy triangles
  double eta = 1.0;            // a cell is accepted when dist >= eta * diam
  int max_depth = 48;
  int azimuth_points = 32;     // surfaces: trapezoid points around the target
  bool use_weight = true;      // false replaces w_eps by 1
};

// eps-level Birman-Schwinger matrix
//   C^T int int int int v(u) v(s) g^*(x) R_z(x + eps u nu_x - y - eps s nu_y) ftilde(y) w_x w_y
// The inner (y, s) integral is split so that the target parameter point is a cell
// corner; cells are refined until they are well separated from it, and the
// corner cells are integrated with a Duffy transformation.
class EpsAssembler {
 public:
  EpsAssembler(const Surface& s, const ReducedCoupling& rc, const TransverseProfile& v, double eps,
               EpsOptions opt = {});

  MatrixXcd T(const KernelContext& ctx) const;
  double eps() const { return eps_; }
  const EpsOptions& options() const { return opt_; }
  std::size_t inner_nodes_per_target() const { return last_inner_count_; }

 private:
  template <int Dim>
  MatrixXcd pairing_impl(const KernelContext& ctx) const;

  Surface surface_;
  const ReducedCoupling* rc_;
  TransverseProfile profile_;
  double eps_;
  EpsOptions opt_;
  SurfaceQuadrature quad_;
  GaussRule transverse_;
  mutable std::size_t last_inner_count_ = 0;
};

struct EpsBSMatrix {
  double eps = 0;
  cplx z = 0;
  MatrixXcd T;
  EpsOptions options;
  double convergence_delta = std::numeric_limits<double>::quiet_NaN();  // vs doubled orders
  bool converged = true;
};

// check_convergence: recompute with doubled orders and flag changes above 1e-3.
EpsBSMatrix eps_bs_matrix(const ReducedCoupling& rc, const KernelContext& ctx, const Surface& s,
                          const TransverseProfile& v, double eps, const EpsOptions& opt = {},
                          bool check_convergence = false);

BSFunction eps_bs_function(const EpsAssembler& a, int dimension, double m);

struct SweepRow {
  double eps = 0;
  double z_eps = std::numeric_limits<double>::quiet_NaN();
  double abs_err = std::numeric_limits<double>::quiet_NaN();
  double bs_diff = 0;  // max entry of T_eps(z*) - T(z*)
  double fit_rate = std::numeric_limits<double>::quiet_NaN();  // local order vs previous row
};

struct SweepResult {
  double z_star = 0;
  std::vector<SweepRow> rows;
  double fitted_order = std::numeric_limits<double>::quiet_NaN();  // informational
};

// Tracks the eps-level root next to the exact eigenvalue z_star for each eps.
SweepResult convergence_sweep(const Surface& s, const ReducedCoupling& rc, double m, double z_star,
                              const MatrixXcd& T_star, const TransverseProfile& v,
                              const std::vector<double>& eps_list, const EpsOptions& opt = {});

}  // namespace diracshell
