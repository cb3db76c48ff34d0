#pragma once

// Steady state of the linear cavity-EIT field equations
//   0 = -(kappa - i dc) E + i g P + sqrt(2 kappa_in) E_in
//   0 = -(gamma - i ds) P + i g E + (i/2) Omega_c S
//   0 = -(gamma_rg/2 - i d2) S + (i/2) Omega_c P
// with g = sqrt(kappa gamma C), E_out = sqrt(2 kappa_in) E - E_in and the
// mirror-loss field E_m = sqrt(2 kappa_h) E. Operators are replaced by their
// coherent-state expectation values.

#include <array>

#include "catcav/core_model.hpp"

namespace catcav {

struct SteadyState {
  Complex e_cav;
  Complex p;
  Complex s;
  Complex e_out;
  Complex e_m;
  Complex e_in;
  double max_residual;  // largest equation residual relative to |E_in|
};

// Solves the 3x3 system for (E, P, S) by partial-pivot elimination.
// A blockaded branch (infinite two-photon detuning) pins S = 0. Throws
// NumericalError naming the vanishing denominator if the system is singular.
SteadyState solve_steady_state(const CavityParams& params, const DetuningSet& det,
                               QubitBranch branch, Complex e_in);

// sqrt(|E_in|^2 - |E_out|^2 - |E_m|^2). Throws NumericalError if the
// difference is below -1e-10 |E_in|^2.
double spontaneous_amplitude(const SteadyState& ss);

// (r, a, m) from the steady state; a carries the phase of the closed form
// only in magnitude, so a is returned real and nonnegative.
OutputAmplitudes steady_state_amplitudes(const CavityParams& params, const DetuningSet& det,
                                         QubitBranch branch, Complex alpha_in);

namespace detail {

using Matrix3 = std::array<std::array<Complex, 3>, 3>;
using Vector3 = std::array<Complex, 3>;

// Returns x with a x = b; throws NumericalError(pivot_names[col]) when the
// pivot in column `col` vanishes.
Vector3 solve3(Matrix3 a, Vector3 b, const std::array<const char*, 3>& pivot_names);

}  // namespace detail

}  // namespace catcav
