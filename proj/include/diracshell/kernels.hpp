#pragma once

#include <functional>
#include <numbers>

#include "diracshell/alpha.hpp"
#include "diracshell/bessel.hpp"

namespace diracshell {

// k(z) = sqrt(z^2 - m^2) with Im k > 0 off [0, inf) and k >= 0 on it.
// Approaching a real gap energy from above or below gives the same value i*sqrt(m^2 - z^2).
cplx momentum(cplx z, double m);

struct KernelContext {
  int dimension = 2;
  double mass = 1.0;
  cplx z = 0.0;
  cplx k = cplx(0, 1);

  KernelContext() = default;
  KernelContext(int n, double m, cplx energy);

  // decay constant kappa = -i k; the Bessel/exponential arguments are kappa*|x|
  cplx kappa() const { return cplx(0, -1) * k; }
  // real energy strictly inside (-|m|, |m|)
  bool in_gap() const { return z.imag() == 0 && std::abs(z.real()) < std::abs(mass); }
};

// Free resolvent kernel R_z(x) for displacement x (size n), dense N x N.
MatrixXcd resolvent_kernel(const VectorXd& x, const KernelContext& ctx);

// Fixed-size evaluator used in the quadrature loops. Kappa is double for real
// gap energies (real Bessel/exponential arguments) and cplx otherwise.
template <int Dim, typename Kappa>
class FreeResolvent {
 public:
  using Matrix = typename Spinor<Dim>::Matrix;

  FreeResolvent(cplx z, double m, Kappa kappa) : z_(z), m_(m), kappa_(kappa) {}

  Matrix operator()(const Point& d) const {
    constexpr double pi = std::numbers::pi;
    const cplx i(0, 1);
    Matrix r;
    if constexpr (Dim == 2) {
      const double rr = std::hypot(d(0), d(1));
      const auto kb = bessel_k01(kappa_ * rr);
      const cplx c = i * cplx(kappa_ * kb.k1) / (2 * pi * rr);
      const cplx e = cplx(kb.k0) / (2 * pi);
      r << e * (z_ + m_), c * cplx(d(0), -d(1)),
           c * cplx(d(0), d(1)), e * (z_ - m_);
    } else {
      const double rr = d.norm();
      const cplx g = cplx(std::exp(-kappa_ * rr)) / (4 * pi * rr);
      const cplx c = i * cplx(1.0 + kappa_ * rr) / (rr * rr) * g;
      const cplx p = cplx(d(0), -d(1)), q = cplx(d(0), d(1));
      const cplx up = g * (z_ + m_), lo = g * (z_ - m_);
      r << up, 0, c * d(2), c * p,
           0, up, c * q, -c * d(2),
           c * d(2), c * p, lo, 0,
           c * q, -c * d(2), 0, lo;
    }
    return r;
  }

 private:
  cplx z_;
  double m_;
  Kappa kappa_;
};

// Calls f(FreeResolvent<Dim, K>) with K = double when the energy lies in the gap.
template <int Dim, typename F>
decltype(auto) with_resolvent(const KernelContext& ctx, F&& f) {
  if (ctx.in_gap())
    return f(FreeResolvent<Dim, double>(ctx.z, ctx.mass, ctx.kappa().real()));
  return f(FreeResolvent<Dim, cplx>(ctx.z, ctx.mass, ctx.kappa()));
}

// Throws unless the resolvent kernel is defined and decaying at ctx.z.
void require_resolvent_set(const KernelContext& ctx);

// Scalar Green's function of -Delta + m^2 - z^2: K_0(kappa r)/(2 pi) or e^{-kappa r}/(4 pi r).
cplx scalar_green(const VectorXd& x, const KernelContext& ctx);

using SpinorField = std::function<VectorXcd(const Point&)>;

struct FDResult {
  VectorXcd value;  // (-i alpha.grad + m alpha_0 - shift) u at x
  double scale = 0;  // |-i alpha.grad u| + |m alpha_0 u| + |shift u|, for relative residuals
};

// Central differences with step h and h/2 combined by one Richardson step.
FDResult free_dirac_fd(const SpinorField& u, const Point& x, int dimension, double m, cplx shift, double h);

}  // namespace diracshell
