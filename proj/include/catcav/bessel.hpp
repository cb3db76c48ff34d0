#pragma once

namespace catcav {

// Spherical Bessel functions of the first kind. Below the crossover the
// power series is summed to full double precision; above it the closed
// trigonometric forms are used. The series avoids the cancellation in
// (3/x^3 - 1/x) sin x - 3 cos x / x^2 near the origin.
inline constexpr double kBesselSeriesCrossover = 1.0;

double sph_j0(double x);
double sph_j2(double x);

// Legendre polynomial P2(z) = (3 z^2 - 1) / 2.
inline double legendre_p2(double z) { return 0.5 * (3.0 * z * z - 1.0); }

}  // namespace catcav
