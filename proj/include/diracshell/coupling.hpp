#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diracshell/geometry.hpp"

namespace diracshell {

// One term of a real trigonometric surface profile, evaluated on the parameter
// direction s. With w = s_x + i s_y:
//   Cos:      Re w^k  (cos(k t) on curves, sin^k(theta) cos(k phi) on surfaces)
//   Sin:      Im w^k
//   PolarCos: cos(k theta) = T_k(s_z)  (surfaces only)
struct ProfileTerm {
  enum class Kind { Cos, Sin, PolarCos };
  Kind kind = Kind::Cos;
  int k = 1;
  double coeff = 0;
};

struct ScalarProfile {
  double constant = 1.0;
  std::vector<ProfileTerm> terms;

  double operator()(const Point& s) const;
  bool is_constant() const { return terms.empty(); }
};

// Constant matrix times scalar profile; columns are spinor densities on the surface.
struct MatrixField {
  MatrixXcd matrix;
  ScalarProfile profile;

  MatrixXcd at(const Point& s) const { return profile(s) * matrix; }
  Eigen::Index rows() const { return matrix.rows(); }
  Eigen::Index cols() const { return matrix.cols(); }
};

struct CouplingSpec {
  MatrixField F;
  MatrixField G;
  std::optional<MatrixXcd> L;  // set when G = F L

  static CouplingSpec from_fields(MatrixField F, MatrixField G);
  static CouplingSpec with_L(MatrixField F, const MatrixXcd& L);
};

struct SampledCoupling {
  std::vector<MatrixXcd> F;
  std::vector<MatrixXcd> G;
};

SampledCoupling sample_coupling(const CouplingSpec& spec, const SurfaceQuadrature& q);

struct HermiticityReport {
  bool hermitian = true;
  double defect = 0;  // max over node pairs and entries of |F(x)G(y)* - G(x)F(y)*|
  double scale = 0;   // max|F| * max|G|
};

// Kernel identity F(x)G(y)* = G(x)F(y)* on all node pairs, relative tolerance rel_tol.
HermiticityReport check_hermiticity(const std::vector<MatrixXcd>& F, const std::vector<MatrixXcd>& G,
                                    double rel_tol = 1e-10);

struct ReducedCoupling {
  int spinor_size = 0;
  int rank = 0;                // N tilde
  MatrixXcd combination;       // W (N x rank): basis columns are F W
  MatrixXcd coefficients;      // C (N x rank): f_k = sum_l C_kl ftilde_l
  std::vector<MatrixXcd> F;    // samples at the quadrature nodes
  std::vector<MatrixXcd> G;
  std::vector<MatrixXcd> basis;  // ftilde samples (N x rank per node)
  HermiticityReport hermiticity;

  // analytic fields, available when built from a CouplingSpec
  std::optional<MatrixField> basis_field;
  std::optional<MatrixField> G_field;

  bool empty() const { return rank == 0; }
};

// Modified Gram-Schmidt with one reorthogonalization pass in the quadrature inner
// product. Columns whose residual is below rank_tol * (largest column norm) are dropped.
ReducedCoupling reduce_basis(const std::vector<MatrixXcd>& F, const SurfaceQuadrature& q,
                             double rank_tol = 1e-8);

// Samples, checks hermiticity, reduces, and attaches the analytic fields.
ReducedCoupling reduce_coupling(const CouplingSpec& spec, const SurfaceQuadrature& q,
                                double rank_tol = 1e-8);

// Quadrature inner product <a, b> = sum_i w_i a_i^* b_i of two sampled spinor columns.
cplx sampled_inner(const std::vector<MatrixXcd>& a, int col_a, const std::vector<MatrixXcd>& b, int col_b,
                   const SurfaceQuadrature& q);

}  // namespace diracshell
