#pragma once

#include <vector>

namespace diracshell {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Cached; nodes from Newton iteration on P_n, ascending order.
const GaussRule& gauss_legendre(int n);

// The rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace diracshell
