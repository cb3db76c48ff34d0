#pragma once

// Ring resonator traversed once per round trip by a homogeneous EIT medium.
// Light is classical; the geometric series over round trips is summed
// exactly, so the closed forms of core_model appear only as the
// large-finesse limit.

#include <vector>

#include "catcav/core_model.hpp"

namespace catcav {

class RoundTripParams {
 public:
  // Ring cavity reproducing `target` (eta_esc, C, kappa and the atomic
  // rates) at the given finesse: T_rt = pi/(kappa F), d_t = 2 pi C / F,
  // rho_in = exp(-kappa_in T_rt), rho_h = exp(-kappa_h T_rt).
  // k and medium_length only fix chi0 = d_t / (k L).
  static RoundTripParams from_target(const CavityParams& target, double finesse,
                                     double k = 2.0 * 3.141592653589793 / 0.78,
                                     double medium_length = 10.0);

  double finesse() const { return finesse_; }
  double optical_depth() const { return d_t_; }
  double chi0() const { return chi0_; }
  double rho_in() const { return rho_in_; }
  double tau_in() const { return tau_in_; }
  double rho_h() const { return rho_h_; }
  double t_rt() const { return t_rt_; }
  double k() const { return k_; }
  double medium_length() const { return length_; }
  const CavityParams& atoms() const { return atoms_; }

  // d_t F / (2 pi).
  double cooperativity() const;

 private:
  RoundTripParams(const CavityParams& atoms) : atoms_(atoms) {}

  CavityParams atoms_;
  double finesse_ = 0.0;
  double d_t_ = 0.0;
  double chi0_ = 0.0;
  double rho_in_ = 0.0;
  double tau_in_ = 0.0;
  double rho_h_ = 0.0;
  double t_rt_ = 0.0;
  double k_ = 0.0;
  double length_ = 0.0;
};

// chi = i chi0 gamma / (gamma - i delta_s + Omega_c^2 / (2 gamma_rg - 4 i delta_2)).
Complex susceptibility(const RoundTripParams& rt, const DetuningSet& det, QubitBranch branch);

// exp(i k L chi / 2).
Complex medium_transmission(const RoundTripParams& rt, const DetuningSet& det,
                            QubitBranch branch);

struct RoundTripFields {
  Complex c;  // intracavity field just after the I/O coupler
  OutputAmplitudes out;
};

// Exact steady state of the round-trip recursion. Medium, then HR mirrors,
// then I/O coupler; the lossless coupler makes |r|^2 + |a|^2 + |m|^2 =
// |alpha_in|^2 hold exactly.
RoundTripFields intracavity_and_outputs(const RoundTripParams& rt, const DetuningSet& det,
                                        QubitBranch branch, Complex alpha_in);

// True inside the single-mode regime (1/F, d_t, |delta_c| T_rt all below `small`).
bool single_mode_regime(const RoundTripParams& rt, const DetuningSet& det, double small = 0.1);

struct ConvergencePoint {
  double finesse;
  double err_r;  // |r_exact - r_closed| / |alpha_in|, maximized over branches
  double err_a;
  double err_m;
  double max_err() const;
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;
  double slope;  // least-squares slope of log(max_err) vs log(F); NaN if any error is 0
};

ConvergenceStudy convergence_study(const CavityParams& target,
                                   const std::vector<double>& finesse_grid,
                                   const DetuningSet& det = DetuningSet::resonant());

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace catcav
