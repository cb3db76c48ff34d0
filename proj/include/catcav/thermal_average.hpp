#pragma once

// Thermal averages of the pair overlap S_12 for two atoms drawn from an
// isotropic Gaussian cloud, and the resulting low-density expansion of the
// collective-mode overlap.

#include "catcav/mode_overlap.hpp"

namespace catcav {

struct ThermalAverage {
  double mean;             // <S_12>
  double mean_abs_sq;      // <|S_12|^2>
  double rms;              // sqrt(mean_abs_sq)
  double mean_low_density; // leading order in 1/zeta^2
  double rms_low_density;
};

// zeta = k sigma_rel with sigma_rel the rms width of x_12 per axis.
// e_in is the unit propagation direction. Throws ParameterError for zeta <= 0.
ThermalAverage thermal_average_s12(double zeta, const Polarization& eps, const Vec3& e_in);

struct SecondOrderPrediction {
  double c_updn_2;        // -(N-2) / (4 N (N-1)^3) <|S_12|^2>
  double large_n;         // -<|S_12|^2> / (4 N^3)
  double c3;              // <|S_12|^2> / 4
  bool low_density;       // zeta >= 5; the expansion is unreliable below
};

SecondOrderPrediction second_order_expansion(double zeta, int n_atoms, const Polarization& eps,
                                             const Vec3& e_in = {0.0, 0.0, 1.0});

}  // namespace catcav
