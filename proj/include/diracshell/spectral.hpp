#pragma once

#include <functional>
#include <vector>

#include "diracshell/boundary_integrals.hpp"

namespace diracshell {

// z -> T(z) for real z in the gap (exact or eps-level Birman-Schwinger matrix).
using BSFunction = std::function<MatrixXcd(double)>;

struct ScanPoint {
  double z = 0;
  cplx det = 1;
};

// `points` uniform energies in (-|m| + margin, |m| - margin), margin = margin_rel * |m|.
std::vector<double> gap_grid(double m, int points = 400, double margin_rel = 1e-3);

// det(I + T(z)) on the grid. Grid points must lie strictly inside the gap.
std::vector<ScanPoint> det_scan(const BSFunction& T, const std::vector<double>& grid, double m);

// Exact Birman-Schwinger matrix as a function of z.
BSFunction exact_bs_function(const ReducedCoupling& rc, const WeylOperator& op, double m);

double max_imag_residue(const std::vector<ScanPoint>& trace);

struct RootOptions {
  double tol = 1e-10;               // bracket width at which refinement stops
  double dip_threshold = 1e-6;      // |det| below this at a local minimum counts as a root
  double singular_threshold = 1e-6; // singular values below this count toward multiplicity
  double edge_fraction = 1e-2;      // roots within this fraction of |m| from the edge get a warning
};

struct Eigenpair {
  double z = 0;
  double det_residual = 0;     // |det(I + T(z*))|
  double sigma_min = 0;        // smallest singular value of I + T(z*)
  double sigma_second = 0;     // second smallest (infinity when rank 1)
  VectorXcd null_vector;       // unit right singular vector for sigma_min
  double null_residual = 0;    // |(I + T(z*)) a|
  int multiplicity = 1;        // singular values below singular_threshold, at least 1
  bool multiplicity_uncertain = false;
  bool gap_edge = false;
  double stability_delta = -1; // |z*(order) - z*(2 order)| when computed, else -1
};

struct SpectralResult {
  double mass = 0;
  int rank = 0;
  std::vector<Eigenpair> eigenvalues;  // ascending in z
  std::vector<ScanPoint> trace;
  double max_imag_residue = 0;

  // eigenvalues counted with multiplicity
  int counted() const;
};

// Sign changes of Re det are refined with TOMS 748; local minima of |det| below
// dip_threshold are refined by Brent minimization and flagged as possibly even
// multiplicity. Non-hermitian couplings are refused.
SpectralResult find_eigenvalues(const std::vector<ScanPoint>& trace, const BSFunction& T, double m, int rank,
                                bool hermitian, const RootOptions& opt = {});

// Null-vector data of I + T(z) at a given root.
Eigenpair analyze_root(double z, const MatrixXcd& T, double m, const RootOptions& opt = {});

// Refines a root of Re det(I + T(z)) near `guess`, searching outward for a sign change
// within [lo, hi]. Returns NaN when no bracket is found.
double track_root(const BSFunction& T, double guess, double lo, double hi, double tol = 1e-10,
                  double first_step = 5e-3);

// Minimizer of |Re det(I + T(z))| on [lo, hi] (Brent), for roots without a sign change.
double refine_dip(const BSFunction& T, double guess, double lo, double hi);

struct EigenfunctionSamples {
  std::vector<Point> points;
  std::vector<VectorXcd> values;
  std::vector<bool> collar;  // true where the point is too close to the surface
  double delta_min = 0;
  double norm = 0;           // norm before normalization
};

// u = gamma(z*) (sum_l a_l ftilde_l) on the given points, normalized to unit discrete
// L2 norm (cell_volume > 0) or unit l2 norm of the sample vector (cell_volume = 0).
EigenfunctionSamples eigenfunction(const SpectralResult& res, int index, const ReducedCoupling& rc,
                                   const SurfaceQuadrature& q, const std::vector<Point>& points,
                                   double cell_volume = 0);

struct DecayFit {
  double rate = 0;       // fitted kappa in |u| ~ r^{-(n-1)/2} e^{-kappa r}
  double expected = 0;   // sqrt(m^2 - z^2)
  double r_squared = 0;
  double r_min = 0, r_max = 0;
};

// Least-squares slope of log(|u| r^{(n-1)/2}) against r.
DecayFit fit_decay(const std::vector<double>& r, const std::vector<double>& abs_u, int dimension);

// Samples the eigenfunction along an exterior ray over r in [R + 8/kappa, R + 16/kappa]
// (R the largest node radius) and fits the decay rate.
DecayFit eigenfunction_decay(const SpectralResult& res, int index, const ReducedCoupling& rc,
                             const SurfaceQuadrature& q, const Point& direction, int samples = 41);

}  // namespace diracshell
