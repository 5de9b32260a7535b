#include "diracshell/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace diracshell {

namespace {
cplx ipow(cplx w, int k) {
  cplx r = 1;
  for (int j = 0; j < k; ++j) r *= w;
  return r;
}
}  // namespace

double ScalarProfile::operator()(const Point& s) const {
  double v = constant;
  if (terms.empty()) return v;
  const cplx w(s(0), s(1));
  for (const auto& t : terms) {
    switch (t.kind) {
      case ProfileTerm::Kind::Cos: v += t.coeff * ipow(w, t.k).real(); break;
      case ProfileTerm::Kind::Sin: v += t.coeff * ipow(w, t.k).imag(); break;
      case ProfileTerm::Kind::PolarCos: {
        // Chebyshev recurrence avoids acos
        double t0 = 1, t1 = s(2);
        for (int j = 1; j < t.k; ++j) {
          const double t2 = 2 * s(2) * t1 - t0;
          t0 = t1;
          t1 = t2;
        }
        v += t.coeff * (t.k == 0 ? 1.0 : t1);
        break;
      }
    }
  }
  return v;
}

CouplingSpec CouplingSpec::from_fields(MatrixField F, MatrixField G) {
  if (F.rows() != F.cols() || G.rows() != G.cols() || F.rows() != G.rows())
    throw InvalidInput("coupling: F and G must be square matrices of equal size");
  CouplingSpec c;
  c.F = std::move(F);
  c.G = std::move(G);
  return c;
}

CouplingSpec CouplingSpec::with_L(MatrixField F, const MatrixXcd& L) {
  if (L.rows() != F.cols() || L.cols() != F.cols()) throw InvalidInput("coupling: L has wrong size");
  CouplingSpec c;
  c.G = MatrixField{F.matrix * L, F.profile};
  c.F = std::move(F);
  c.L = L;
  return c;
}

SampledCoupling sample_coupling(const CouplingSpec& spec, const SurfaceQuadrature& q) {
  const int N = spinor_size(q.dimension);
  if (spec.F.rows() != N || spec.F.cols() != N || spec.G.rows() != N || spec.G.cols() != N)
    throw InvalidInput("sample_coupling: coupling matrices must be " + std::to_string(N) + "x" +
                       std::to_string(N) + " in dimension " + std::to_string(q.dimension));
  SampledCoupling s;
  s.F.reserve(q.size());
  s.G.reserve(q.size());
  for (const auto& n : q.nodes) {
    s.F.push_back(spec.F.at(n.point.param));
    s.G.push_back(spec.G.at(n.point.param));
  }
  return s;
}

HermiticityReport check_hermiticity(const std::vector<MatrixXcd>& F, const std::vector<MatrixXcd>& G,
                                    double rel_tol) {
  HermiticityReport r;
  if (F.size() != G.size()) throw InvalidInput("check_hermiticity: F and G sampled on different nodes");
  if (F.empty()) return r;
  const Eigen::Index N = F[0].rows();
  const Eigen::Index n = static_cast<Eigen::Index>(F.size());
  MatrixXcd fs(n * N, N), gs(n * N, N);
  double fmax = 0, gmax = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    fs.middleRows(j * N, N) = F[j];
    gs.middleRows(j * N, N) = G[j];
    fmax = std::max(fmax, F[j].cwiseAbs().maxCoeff());
    gmax = std::max(gmax, G[j].cwiseAbs().maxCoeff());
  }
  // row block j of P is (F_i G_j^* - G_i F_j^*)^*; the defect matrix is anti-hermitian,
  // so blocks j >= i suffice
  double defect = 0;
  MatrixXcd p;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index rows = (n - i) * N;
    p.noalias() = gs.bottomRows(rows) * F[i].adjoint();
    p.noalias() -= fs.bottomRows(rows) * G[i].adjoint();
    defect = std::max(defect, p.cwiseAbs().maxCoeff());
  }
  r.defect = defect;
  r.scale = fmax * gmax;
  r.hermitian = defect <= rel_tol * r.scale;
  return r;
}

namespace {

// sqrt(w_i)-scaled stack of the sampled columns, so that the quadrature inner
// product becomes the Euclidean one.
MatrixXcd scaled_stack(const std::vector<MatrixXcd>& F, const SurfaceQuadrature& q) {
  if (F.size() != q.size()) throw InvalidInput("reduce_basis: samples do not match the quadrature");
  const Eigen::Index N = F.empty() ? 0 : F[0].rows();
  const Eigen::Index cols = F.empty() ? 0 : F[0].cols();
  MatrixXcd a(static_cast<Eigen::Index>(F.size()) * N, cols);
  for (std::size_t i = 0; i < F.size(); ++i)
    a.middleRows(static_cast<Eigen::Index>(i) * N, N) = std::sqrt(q.nodes[i].weight) * F[i];
  return a;
}

}  // namespace

ReducedCoupling reduce_basis(const std::vector<MatrixXcd>& F, const SurfaceQuadrature& q, double rank_tol) {
  if (!(rank_tol > 0)) throw InvalidInput("reduce_basis: rank_tol must be positive");
  ReducedCoupling rc;
  rc.F = F;
  const MatrixXcd a = scaled_stack(F, q);
  const Eigen::Index N = F.empty() ? spinor_size(q.dimension) : F[0].rows();
  rc.spinor_size = static_cast<int>(N);

  double largest = 0;
  for (Eigen::Index k = 0; k < a.cols(); ++k) largest = std::max(largest, a.col(k).norm());

  MatrixXcd Q(a.rows(), a.cols()), W = MatrixXcd::Zero(a.cols(), a.cols());
  int rank = 0;
  if (largest > 0) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      VectorXcd v = a.col(k);
      VectorXcd c = VectorXcd::Unit(a.cols(), k);
      for (int pass = 0; pass < 2; ++pass) {
        for (int l = 0; l < rank; ++l) {
          const cplx proj = Q.col(l).dot(v);
          v -= proj * Q.col(l);
          c -= proj * W.col(l);
        }
      }
      const double nv = v.norm();
      if (nv > rank_tol * largest) {
        Q.col(rank) = v / nv;
        W.col(rank) = c / nv;
        ++rank;
      }
    }
  }
  rc.rank = rank;
  rc.combination = W.leftCols(rank);
  rc.coefficients = (Q.leftCols(rank).adjoint() * a).transpose();  // C_kl = <ftilde_l, f_k>
  rc.basis.reserve(F.size());
  for (const auto& f : F) rc.basis.push_back(f * rc.combination);
  return rc;
}

ReducedCoupling reduce_coupling(const CouplingSpec& spec, const SurfaceQuadrature& q, double rank_tol) {
  SampledCoupling s = sample_coupling(spec, q);
  ReducedCoupling rc = reduce_basis(s.F, q, rank_tol);
  rc.G = std::move(s.G);
  rc.hermiticity = check_hermiticity(rc.F, rc.G);
  rc.basis_field = MatrixField{spec.F.matrix * rc.combination, spec.F.profile};
  rc.G_field = spec.G;
  return rc;
}

cplx sampled_inner(const std::vector<MatrixXcd>& a, int col_a, const std::vector<MatrixXcd>& b, int col_b,
                   const SurfaceQuadrature& q) {
  cplx s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.nodes[i].weight * a[i].col(col_a).dot(b[i].col(col_b));
  return s;
}

}  // namespace diracshell
