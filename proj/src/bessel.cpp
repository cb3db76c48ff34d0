#include "catcav/bessel.hpp"

#include <cmath>

namespace catcav {

namespace {

// j_l(x) = x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
double series(int l, double x) {
  double lead = 1.0;
  for (int i = 1; i <= l; ++i) lead *= x / (2.0 * i + 1.0);
  const double y = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return lead * sum;
}

}  // namespace

double sph_j0(double x) {
  x = std::abs(x);
  if (x < kBesselSeriesCrossover) return series(0, x);
  return std::sin(x) / x;
}

double sph_j2(double x) {
  x = std::abs(x);
  if (x < kBesselSeriesCrossover) return series(2, x);
  const double s = std::sin(x);
  const double c = std::cos(x);
  return (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
}

}  // namespace catcav
