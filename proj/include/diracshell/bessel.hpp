#pragma once

// Modified Bessel functions K_0, K_1 (and I_0, I_1) for real and complex argument.
//
// Regimes, chosen so that every branch keeps full double precision on the
// positive real axis:
//   |w| <= 2                  ascending series
//   2 < |w| < 25, |arg w|<=1.35  trapezoidal rule on K_nu(w) = int_0^inf e^{-w cosh t} cosh(nu t) dt
//   |w| >= 25                 Hankel asymptotic expansion
//   remaining sector          extended-precision series below |w| = 14, asymptotic above
// The integral rule is doubly exponentially convergent; its step is matched to
// the width of the strip where the integrand stays bounded.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <type_traits>

#include "diracshell/types.hpp"

namespace diracshell {

template <typename T>
struct BesselPair {
  T k0;
  T k1;
};

namespace bessel_detail {

template <typename T> struct real_of { using type = T; };
template <typename T> struct real_of<std::complex<T>> { using type = T; };
template <typename T> using real_t = typename real_of<T>::type;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

inline constexpr double kSeriesRadius = 2.0;
inline constexpr double kAsymptoticRadius = 25.0;
inline constexpr double kMaxIntegralArg = 1.35;
inline constexpr double kSectorAsymptoticRadius = 14.0;

// I_0, I_1 and K_0, K_1 from the ascending series (A&S 9.6.13 and 9.6.11).
template <typename T>
void series(const T& w, T& i0, T& i1, T& k0, T& k1) {
  using R = real_t<T>;
  const R eps = std::numeric_limits<R>::epsilon();
  const T y = w * w / R(4);
  T t0 = T(1), t1 = T(1);   // y^k/(k!)^2 and y^k/(k!(k+1)!)
  T s_i0 = T(0), s_i1 = T(0), s_k0 = T(0), s_k1 = T(0);
  R h = 0;                  // harmonic number H_k
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      t0 *= y / R(k * k);
      t1 *= y / R(k * (k + 1));
      h += R(1) / R(k);
    }
    const R h_next = h + R(1) / R(k + 1);
    s_i0 += t0;
    s_i1 += t1;
    s_k0 += h * t0;
    s_k1 += (h + h_next) * t1;
    if (k > 2 && std::abs(t0) * (h_next + 1) <= eps * std::abs(s_i0)) break;
  }
  const T lg = std::log(w / R(2)) + std::numbers::egamma_v<R>;
  i0 = s_i0;
  i1 = w / R(2) * s_i1;
  k0 = -lg * i0 + s_k0;
  k1 = T(1) / w + lg * i1 - w / R(4) * s_k1;
}

template <typename T>
BesselPair<T> asymptotic(const T& w) {
  using R = real_t<T>;
  const R eps = std::numeric_limits<R>::epsilon();
  T sum0 = T(1), sum1 = T(1);
  T a0 = T(1), a1 = T(1);
  R last = std::numeric_limits<R>::max();
  for (int k = 1; k < 60; ++k) {
    const R odd = R(2 * k - 1) * R(2 * k - 1);
    a0 *= (R(0) - odd) / (R(8 * k) * w);
    a1 *= (R(4) - odd) / (R(8 * k) * w);
    const R mag = std::max(std::abs(a0), std::abs(a1));
    if (mag > last) break;  // series started to diverge
    sum0 += a0;
    sum1 += a1;
    last = mag;
    if (mag < eps) break;
  }
  const T pre = std::sqrt(std::numbers::pi_v<R> / (R(2) * w)) * std::exp(-w);
  return {pre * sum0, pre * sum1};
}

template <typename T>
BesselPair<T> integral(const T& w) {
  using R = real_t<T>;
  using std::abs;
  const R pi = std::numbers::pi_v<R>;
  const R a = abs(w);
  const R phi = abs(std::arg(w));
  // strip half-width: bounded by the sector and by the growth e^{|w|(1-cos d)}
  R d = std::min(R(0.85) * (pi / 2 - phi), R(1.45));
  if (a > 2) d = std::min(d, std::acos(R(1) - R(2) / a));
  const R h = 2 * pi * d / R(42);
  const R re = std::real(w);
  const R tmax = std::acosh(R(1) + R(46) / re);
  const int n = static_cast<int>(std::ceil(tmax / h));
  const R eh = std::exp(h);
  R e = 1;
  T s0 = T(0.5), s1 = T(0.5);
  for (int j = 1; j <= n; ++j) {
    e *= eh;
    const R ch = (e + 1 / e) / 2;
    const R ch_minus_one = (e - 2 + 1 / e) / 2;  // cosh t - 1 without cancellation near 0
    const T f = std::exp(-w * ch_minus_one);
    s0 += f;
    s1 += f * ch;
  }
  const T scale = h * std::exp(-w);
  return {scale * s0, scale * s1};
}

void check_argument(double re, double im);

}  // namespace bessel_detail

// K_0(w), K_1(w) on the principal branch. T is double (w > 0) or std::complex<double>.
template <typename T>
BesselPair<T> bessel_k01(const T& w) {
  namespace bd = bessel_detail;
  if constexpr (bd::is_complex<T>::value) {
    bd::check_argument(w.real(), w.imag());
    if (w.imag() == 0) {
      const auto r = bessel_k01(w.real());
      return {T(r.k0), T(r.k1)};
    }
    const double a = std::abs(w);
    if (a <= bd::kSeriesRadius) {
      T i0, i1, k0, k1;
      bd::series(w, i0, i1, k0, k1);
      return {k0, k1};
    }
    if (a >= bd::kAsymptoticRadius) return bd::asymptotic(w);
    if (std::abs(std::arg(w)) <= bd::kMaxIntegralArg) return bd::integral(w);
    if (a >= bd::kSectorAsymptoticRadius) return bd::asymptotic(w);
    using LC = std::complex<long double>;
    LC i0, i1, k0, k1;
    bd::series(LC(w.real(), w.imag()), i0, i1, k0, k1);
    return {T(double(k0.real()), double(k0.imag())), T(double(k1.real()), double(k1.imag()))};
  } else {
    bd::check_argument(w, 0.0);
    if (w <= bd::kSeriesRadius) {
      T i0, i1, k0, k1;
      bd::series(w, i0, i1, k0, k1);
      return {k0, k1};
    }
    if (w >= bd::kAsymptoticRadius) return bd::asymptotic(w);
    return bd::integral(w);
  }
}

// Single-order entry points. These also honor the self-test fault hook.
double bessel_k(int order, double x);
cplx bessel_k(int order, cplx w);

// I_0, I_1 by the ascending series (intended for moderate |w|).
template <typename T>
BesselPair<T> bessel_i01(const T& w) {
  T i0, i1, k0, k1;
  if (w == T(0)) return {T(1), T(0)};
  bessel_detail::series(w, i0, i1, k0, k1);
  return {i0, i1};
}

// Test hook: multiplies the results of bessel_k by (1 + relative). Zero disables it.
void set_bessel_fault(double relative);
double bessel_fault();

}  // namespace diracshell
