// Prints the frozen Bessel reference table compiled into the library self-test.
#include <cmath>
#include <cstdio>
#include <vector>

#include "bessel_oracle.hpp"

int main() {
  std::vector<std::complex<double>> pts;
  for (int i = 0; i < 40; ++i) pts.emplace_back(1e-3 * std::pow(3e4, i / 39.0), 0.0);
  for (double r : {0.01, 0.5, 1.5, 3.0, 7.0, 12.0, 20.0, 29.0})
    for (double ph : {0.4, 1.2, 1.5, 2.2, 3.0}) pts.push_back(std::polar(r, ph));
  for (auto w : pts) {
    std::complex<double> k0, k1;
    oracle::bessel_k01(w, k0, k1);
    std::printf("    {%.17g, %.17g, %.17g, %.17g, %.17g, %.17g},\n", w.real(), w.imag(), k0.real(), k0.imag(),
                k1.real(), k1.imag());
  }
}
