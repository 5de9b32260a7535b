#include "diracshell/kernels.hpp"

#include <string>

namespace diracshell {

cplx momentum(cplx z, double m) {
  const cplx w = z * z - m * m;
  if (w.imag() == 0) {
    if (w.real() >= 0) return std::sqrt(w.real());
    return cplx(0, std::sqrt(-w.real()));
  }
  // principal root of -w has positive real part, so i*sqrt(-w) lies in the upper half plane
  return cplx(0, 1) * std::sqrt(-w);
}

KernelContext::KernelContext(int n, double m, cplx energy) : dimension(n), mass(m), z(energy) {
  if (n != 2 && n != 3) throw InvalidInput("KernelContext: unsupported dimension " + std::to_string(n));
  k = momentum(energy, m);
}

void require_resolvent_set(const KernelContext& ctx) {
  if (!(ctx.k.imag() > 0))
    throw std::domain_error("resolvent kernel: z = " + std::to_string(ctx.z.real()) + "+" +
                            std::to_string(ctx.z.imag()) +
                            "i lies on the spectrum of the free operator");
}

MatrixXcd resolvent_kernel(const VectorXd& x, const KernelContext& ctx) {
  const int n = ctx.dimension;
  if (x.size() != n) throw InvalidInput("resolvent_kernel: displacement has wrong dimension");
  const double r = x.norm();
  if (r == 0) throw std::domain_error("resolvent_kernel: x = 0 is the kernel singularity");
  require_resolvent_set(ctx);

  // straightforward assembly from the alpha matrices; the quadrature loops use FreeResolvent
  const AlphaSet a = alpha_matrices(n);
  const int N = a.spinor_size;
  const cplx i(0, 1);
  const cplx kappa = ctx.kappa();
  MatrixXcd adx = MatrixXcd::Zero(N, N);
  for (int j = 0; j < n; ++j) adx += x(j) * a.alpha[j];
  const MatrixXcd even = ctx.z * MatrixXcd::Identity(N, N) + ctx.mass * a.alpha0;
  constexpr double pi = std::numbers::pi;
  if (n == 2) {
    const auto kb = bessel_k01(kappa * r);
    return (ctx.k / (2 * pi)) * kb.k1 * adx / r + kb.k0 / (2 * pi) * even;
  }
  return (even + (1.0 - i * ctx.k * r) * i * adx / (r * r)) * std::exp(i * ctx.k * r) / (4 * pi * r);
}

cplx scalar_green(const VectorXd& x, const KernelContext& ctx) {
  const double r = x.norm();
  if (r == 0) throw std::domain_error("scalar_green: x = 0");
  require_resolvent_set(ctx);
  constexpr double pi = std::numbers::pi;
  if (ctx.dimension == 2) return bessel_k01(ctx.kappa() * r).k0 / (2 * pi);
  return std::exp(-ctx.kappa() * r) / (4 * pi * r);
}

FDResult free_dirac_fd(const SpinorField& u, const Point& x, int dimension, double m, cplx shift, double h) {
  const AlphaSet a = alpha_matrices(dimension);
  const VectorXcd u0 = u(x);
  VectorXcd grad_term = VectorXcd::Zero(u0.size());
  for (int k = 0; k < dimension; ++k) {
    Point e = Point::Zero();
    e(k) = 1;
    auto central = [&](double s) -> VectorXcd { return (u(x + s * e) - u(x - s * e)) / (2 * s); };
    const VectorXcd d = (4.0 * central(h / 2) - central(h)) / 3.0;
    grad_term += cplx(0, -1) * (a.alpha[k] * d);
  }
  const VectorXcd mass_term = m * (a.alpha0 * u0);
  FDResult r;
  r.value = grad_term + mass_term - shift * u0;
  r.scale = grad_term.norm() + mass_term.norm() + std::abs(shift) * u0.norm();
  return r;
}

}  // namespace diracshell
