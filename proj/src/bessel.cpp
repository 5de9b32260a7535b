#include "diracshell/bessel.hpp"

#include <atomic>

namespace diracshell {

namespace {
std::atomic<double> g_fault{0.0};
}

void bessel_detail::check_argument(double re, double im) {
  if (re == 0 && im == 0) throw std::domain_error("bessel_k: singular at w = 0");
  if (im == 0 && re < 0) throw std::domain_error("bessel_k: argument on the branch cut (-inf, 0)");
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::domain_error("bessel_k: non-finite argument");
}

double bessel_k(int order, double x) {
  if (order != 0 && order != 1) throw InvalidInput("bessel_k: order must be 0 or 1");
  const auto r = bessel_k01(x);
  return (order == 0 ? r.k0 : r.k1) * (1 + g_fault.load(std::memory_order_relaxed));
}

cplx bessel_k(int order, cplx w) {
  if (order != 0 && order != 1) throw InvalidInput("bessel_k: order must be 0 or 1");
  const auto r = bessel_k01(w);
  return (order == 0 ? r.k0 : r.k1) * (1 + g_fault.load(std::memory_order_relaxed));
}

void set_bessel_fault(double relative) { g_fault.store(relative); }
double bessel_fault() { return g_fault.load(); }

}  // namespace diracshell
