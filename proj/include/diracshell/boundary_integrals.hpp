#pragma once

#include <limits>
#include <vector>

#include "diracshell/coupling.hpp"
#include "diracshell/kernels.hpp"

namespace diracshell {

// Inner (singular) rule parameters for the principal-value pairings.
//
// Curves: the integrand around the target is folded, t -> k(t) + k(-t) on (0, pi],
// which removes the odd 1/t part exactly; the remaining log|t| singularity is
// resolved by geometrically graded Gauss panels.
// Surfaces: geodesic-polar coordinates around the target on the reference
// sphere, Gauss in the polar angle times an even trapezoid in the azimuth; the
// area factor sin(theta') cancels the 1/r singularity and the symmetric azimuth
// rule cancels the odd part.
struct SingularRuleOptions {
  int panel_points = 14;
  double grading = 0.25;
  double smallest_panel = 1e-15;
  int polar_points = 0;    // 0: surface order
  int azimuth_points = 0;  // 0: twice the surface order
};

// Principal-value Weyl operator M(z) on a surface, discretized with an outer
// surface quadrature and the singular inner rule.
class WeylOperator {
 public:
  WeylOperator(const Surface& s, int order, SingularRuleOptions opt = {});

  const Surface& surface() const { return surface_; }
  const SurfaceQuadrature& quadrature() const { return quad_; }
  const SingularRuleOptions& options() const { return opt_; }

  // (M f)(x_i) at every outer node (N x cols each).
  std::vector<MatrixXcd> apply(const MatrixField& f, const KernelContext& ctx) const;
  // P_kj = <g_k, M f_j> = int g_k(x)^* (M f_j)(x) dsigma(x)
  MatrixXcd pairing(const MatrixField& g, const MatrixField& f, const KernelContext& ctx) const;

 private:
  template <int Dim>
  std::vector<MatrixXcd> apply_impl(const MatrixField& f, const KernelContext& ctx) const;

  Surface surface_;
  SurfaceQuadrature quad_;
  SingularRuleOptions opt_;
  std::vector<double> fold_t_, fold_w_;  // graded rule on (0, pi]
};

// Single-column pairing <g, M f>; g, f given as one-column fields.
cplx weyl_pairing(const MatrixField& g, const MatrixField& f, const KernelContext& ctx, const WeylOperator& op);

struct BSMatrix {
  cplx z = 0;
  MatrixXcd T;  // rank x rank
  int order = 0;
  double error_estimate = std::numeric_limits<double>::quiet_NaN();
};

// T = C^T Y with Y_kj = <g_k, M(z) ftilde_j>. Empty coupling gives an empty matrix.
BSMatrix bs_matrix(const ReducedCoupling& rc, const KernelContext& ctx, const WeylOperator& op);

// As above, with error_estimate = max |T(order) - T(order / 2)|.
BSMatrix bs_matrix_estimated(const ReducedCoupling& rc, const KernelContext& ctx, const WeylOperator& op);

// H_ij = <ftilde_i, M(z) ftilde_j>
MatrixXcd weyl_gram(const ReducedCoupling& rc, const KernelContext& ctx, const WeylOperator& op);

struct FieldSamples {
  std::vector<VectorXcd> values;  // spinor per point (zero where flagged)
  std::vector<bool> too_close;    // within the collar of width delta_min
  double delta_min = 0;
};

// u(x) = int R_z(x - y) (sum_l a_l ftilde_l)(y) dsigma(y) by the smooth surface rule.
// Points closer than delta_min to the nodes are flagged (default: 2 * node spacing).
FieldSamples gamma_apply(const VectorXcd& a, const ReducedCoupling& rc, const KernelContext& ctx,
                         const std::vector<Point>& points, const SurfaceQuadrature& q,
                         double delta_min = -1);

// Rotationally reduced oracles for constant couplings F = I, G = L.
// Circle of radius R: T = L * Phi(z) * (z I + m sigma_3),
//   Phi = R^2 int_0^{2 pi} K_0(2 kappa R sin(psi / 2)) dpsi  (tanh-sinh quadrature).
// Sphere of radius R: T = L * Phi(z) * (z I + m alpha_0), Phi = 4 pi R^2 (1 - e^{-2 kappa R}) / (2 kappa).
double circle_phi(double R, const KernelContext& ctx);
double sphere_phi(double R, const KernelContext& ctx);
BSMatrix circle_fourier_oracle(double R, const KernelContext& ctx, const MatrixXcd& L);
BSMatrix sphere_closed_form_oracle(double R, const KernelContext& ctx, const MatrixXcd& L);

}  // namespace diracshell
