#pragma once

// Steady-state input/output amplitudes of a one-sided cavity filled with a
// Rydberg-EIT medium. Rates are angular frequencies in arbitrary but
// consistent units; amplitudes are dimensionless (sqrt of photon number).

#include <complex>

namespace catcav {

using Complex = std::complex<double>;

enum class QubitBranch {
  Up,  // stationary Rydberg excitation present: blockade, EIT switched off
  Dn,  // no stationary excitation: EIT
};

const char* to_string(QubitBranch branch);

class CavityParams {
 public:
  // Rate-level constructor. Throws ParameterError unless
  // 0 < eta_esc <= 1, C >= 0, kappa, gamma, gamma_rg > 0 and omega_c >= 0.
  static CavityParams from_rates(double eta_esc, double coop, double kappa, double gamma,
                                 double omega_c, double gamma_rg);

  // Builds the parameter set from the three numbers that fix every resonant
  // result. omega_c is chosen such that Lambda_dn comes out as requested;
  // the remaining rates default to 1.
  static CavityParams from_lambda(double eta_esc, double coop, double lambda_dn,
                                  double kappa = 1.0, double gamma = 1.0,
                                  double gamma_rg = 1.0);

  double eta_esc() const { return eta_esc_; }
  double coop() const { return coop_; }
  double kappa() const { return kappa_; }
  double kappa_in() const { return kappa_in_; }
  double kappa_h() const { return kappa_h_; }
  double gamma() const { return gamma_; }
  double omega_c() const { return omega_c_; }
  double gamma_rg() const { return gamma_rg_; }

  CavityParams with_coop(double coop) const;
  CavityParams with_omega_c(double omega_c) const;

 private:
  CavityParams() = default;

  double eta_esc_ = 1.0;
  double coop_ = 0.0;
  double kappa_ = 1.0;
  double kappa_in_ = 1.0;
  double kappa_h_ = 0.0;
  double gamma_ = 1.0;
  double omega_c_ = 0.0;
  double gamma_rg_ = 1.0;
};

// Two-photon detuning that may be "infinitely large": a blockaded branch
// drops the coupling term algebraically instead of carrying a huge float.
class TwoPhotonDetuning {
 public:
  static TwoPhotonDetuning finite(double delta) { return TwoPhotonDetuning(false, delta); }
  static TwoPhotonDetuning infinite() { return TwoPhotonDetuning(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  double value() const { return value_; }

 private:
  TwoPhotonDetuning(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

struct DetuningSet {
  double delta_c = 0.0;  // omega_in - omega_cav
  double delta_s = 0.0;  // omega_in - omega_eg
  TwoPhotonDetuning delta2_up = TwoPhotonDetuning::infinite();
  TwoPhotonDetuning delta2_dn = TwoPhotonDetuning::finite(0.0);

  static DetuningSet resonant() { return {}; }
  const TwoPhotonDetuning& two_photon(QubitBranch branch) const {
    return branch == QubitBranch::Up ? delta2_up : delta2_dn;
  }
};

struct OutputAmplitudes {
  Complex r;  // reflected
  Complex a;  // atomic spontaneous emission
  Complex m;  // HR-mirror loss
  Complex alpha_in;

  // |r|^2 + |a|^2 + |m|^2 - |alpha_in|^2, relative to |alpha_in|^2 (0 if alpha_in = 0).
  double energy_residual() const;
};

// Lambda_up = 1, Lambda_dn = sqrt(1 + Omega_c^2 / (2 gamma gamma_rg)).
double lambda(const CavityParams& params, QubitBranch branch);

Complex effective_cooperativity(const CavityParams& params, const DetuningSet& det,
                                QubitBranch branch);

// Cavity reflection coefficient -1 + 2 eta_esc kappa / (kappa - i delta_c + kappa C_eff).
Complex reflection_coefficient(const CavityParams& params, const DetuningSet& det,
                               QubitBranch branch);

// Resonant amplitudes (all detunings zero, blockade infinitely strong).
OutputAmplitudes output_amplitudes(const CavityParams& params, QubitBranch branch,
                                   Complex alpha_in);

// Closed-form amplitudes at arbitrary detunings (leading order in the
// inverse finesse). Reduces to output_amplitudes() on resonance.
OutputAmplitudes detuned_output_amplitudes(const CavityParams& params, const DetuningSet& det,
                                           QubitBranch branch, Complex alpha_in);

// Shortest input pulse for which self-blockade stays negligible:
// |alpha_in|^2 / (2 kappa). Result in the inverse unit of kappa.
double min_pulse_duration(const CavityParams& params, double mean_photons);

}  // namespace catcav
