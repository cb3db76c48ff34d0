#include "catcav/thermal_average.hpp"

#include <cmath>

#include "catcav/bessel.hpp"
#include "catcav/errors.hpp"

namespace catcav {

ThermalAverage thermal_average_s12(double zeta, const Polarization& eps, const Vec3& e_in) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ParameterError("zeta must be > 0");
  const double n = norm(e_in);
  if (!(n > 0.0)) throw ParameterError("propagation direction must be nonzero");
  const double p_in = legendre_p2(eps.projection({e_in[0] / n, e_in[1] / n, e_in[2] / n}));
  const double p_self = legendre_p2(eps.self_product());

  // Radial Gaussian averages of j0(kx) e^{ikx cos} and |.|^2 over directions;
  // I0 and I2 are the monopole and quadrupole parts.
  const double z2 = zeta * zeta;
  const double z4 = z2 * z2;
  const double z6 = z4 * z2;
  const double one_minus_e = -std::expm1(-2.0 * z2);
  const double i0 = one_minus_e / (2.0 * z2);
  const double i2 = -3.0 / z4 + (1.0 / z2 + 3.0 / z4 + 3.0 / z6) * one_minus_e / 2.0;

  ThermalAverage t;
  t.mean = i0 - p_in * i2;
  t.mean_abs_sq = i0 + (1.0 + p_self) / 10.0 * i2;
  t.rms = std::sqrt(t.mean_abs_sq);
  t.mean_low_density = (1.0 - p_in) / (2.0 * z2);
  t.rms_low_density = std::sqrt((11.0 + p_self) / 20.0) / zeta;
  return t;
}

SecondOrderPrediction second_order_expansion(double zeta, int n_atoms, const Polarization& eps,
                                             const Vec3& e_in) {
  if (n_atoms < 2) throw ParameterError("second-order expansion needs N >= 2");
  const double sq = thermal_average_s12(zeta, eps, e_in).mean_abs_sq;
  const double n = n_atoms;
  SecondOrderPrediction p;
  p.c_updn_2 = -(n - 2.0) / (4.0 * n * std::pow(n - 1.0, 3)) * sq;
  p.large_n = -sq / (4.0 * n * n * n);
  p.c3 = sq / 4.0;
  p.low_density = zeta >= 5.0;
  return p;
}

}  // namespace catcav
