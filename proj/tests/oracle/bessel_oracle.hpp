#pragma once

// Reference K_0, K_1 from the ascending series carried out in 100-digit
// arithmetic. At |w| = 30 the series loses about 26 digits to cancellation,
// which still leaves far more than double precision.

#include <complex>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace oracle {

namespace mp = boost::multiprecision;
using Complex100 = mp::cpp_complex_100;
using Real100 = mp::cpp_bin_float_100;

inline void bessel_k01_hp(const Complex100& w, Complex100& k0, Complex100& k1) {
  const Complex100 y = w * w / 4;
  Complex100 t0 = 1, t1 = 1, si0 = 0, si1 = 0, sk0 = 0, sk1 = 0;
  Real100 h = 0;
  const Real100 stop("1e-95");
  for (int k = 0; k < 4000; ++k) {
    if (k > 0) {
      t0 *= y / Real100(k * k);
      t1 *= y / Real100(k * (k + 1));
      h += Real100(1) / k;
    }
    const Real100 hn = h + Real100(1) / (k + 1);
    si0 += t0;
    si1 += t1;
    sk0 += h * t0;
    sk1 += (h + hn) * t1;
    if (k > 10 && abs(t0) < stop * abs(si0)) break;
  }
  const Real100 euler("0.57721566490153286060651209008240243104215933593992359880576723488486772677766467");
  const Complex100 lg = log(w / Real100(2)) + euler;
  k0 = -lg * si0 + sk0;
  k1 = Complex100(1) / w + lg * (w / Real100(2) * si1) - w / Real100(4) * sk1;
}

inline void bessel_k01(std::complex<double> w, std::complex<double>& k0, std::complex<double>& k1) {
  Complex100 a, b;
  bessel_k01_hp(Complex100(w.real(), w.imag()), a, b);
  k0 = {static_cast<double>(a.real()), static_cast<double>(a.imag())};
  k1 = {static_cast<double>(b.real()), static_cast<double>(b.imag())};
}

}  // namespace oracle
