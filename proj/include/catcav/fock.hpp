#pragma once

// Truncated Fock-space constructions. These are brute-force references for
// the closed-form coherent-state results and are deliberately written
// without using them.

#include <complex>
#include <vector>

namespace catcav::fock {

using Complex = std::complex<double>;

// Cutoff large enough that the Poisson tail beyond it is negligible:
// |alpha|^2 + 10 |alpha| + 20.
int cutoff_for(double abs_alpha);

// Coefficients <n|alpha>, n = 0..cutoff.
std::vector<Complex> coherent_state(Complex alpha, int cutoff);

double norm_squared(const std::vector<Complex>& psi);

// Two-mode amplitude psi[m][k] stored row-major with (cutoff+1)^2 entries.
struct TwoModeState {
  int cutoff = 0;
  std::vector<Complex> amp;

  Complex& at(int m, int k) { return amp[m * (cutoff + 1) + k]; }
  const Complex& at(int m, int k) const { return amp[m * (cutoff + 1) + k]; }
  double norm_squared() const;
};

// Lossless beam splitter (real transmission tau, reflection rho,
// tau^2 + rho^2 = 1) acting on |psi>_a |0>_b:
// |n>|0> -> sum_k sqrt(binom(n,k)) tau^{n-k} rho^k |n-k>|k>.
TwoModeState beam_splitter_vacuum_port(const std::vector<Complex>& psi, double loss);

struct BeamSplitterReference {
  double visibility_factor;  // |coherence| after tracing out the reflected port
  Complex mean_field_up;     // <a> of transmitted light, up branch
  Complex mean_field_dn;
  double norm_deficit;       // 1 - min state norm^2 from truncation
};

// Cat coherence block |psi_dn><psi_up| sent through the beam splitter; the
// reflected port is traced out and the Frobenius norm of the remaining
// block gives the visibility factor V_bs / V.
BeamSplitterReference beam_splitter_reference(Complex alpha_up, Complex alpha_dn, double loss,
                                              int cutoff);

// <m|n> of Fock states |m> in mode c_up and |n> in mode c_dn whose mode
// functions overlap by c_updn, constructed in the orthonormal pair
// (c_up, c_perp) by expanding (b_dn^dag)^n with b_dn^dag = a_perp^dag
// sqrt(1-|c|^2) + a_up^dag c.
struct ModeOverlapReference {
  Complex overlap;
  double norm_deficit;
};

ModeOverlapReference coherent_overlap_in_modes(Complex c_updn, Complex alpha_up,
                                               Complex alpha_dn, int cutoff);

}  // namespace catcav::fock
