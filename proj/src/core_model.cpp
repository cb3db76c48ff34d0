#include "catcav/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catcav/errors.hpp"

namespace catcav {

namespace {

constexpr Complex kI{0.0, 1.0};

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

const char* to_string(QubitBranch branch) { return branch == QubitBranch::Up ? "up" : "dn"; }

CavityParams CavityParams::from_rates(double eta_esc, double coop, double kappa, double gamma,
                                      double omega_c, double gamma_rg) {
  require(std::isfinite(eta_esc) && eta_esc > 0.0 && eta_esc <= 1.0,
          "eta_esc must lie in (0, 1]");
  require(std::isfinite(coop) && coop >= 0.0, "cooperativity must be >= 0");
  require(std::isfinite(kappa) && kappa > 0.0, "kappa must be > 0");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(gamma_rg) && gamma_rg > 0.0, "gamma_rg must be > 0");
  require(std::isfinite(omega_c) && omega_c >= 0.0, "omega_c must be >= 0");

  CavityParams p;
  p.eta_esc_ = eta_esc;
  p.coop_ = coop;
  p.kappa_ = kappa;
  p.kappa_in_ = eta_esc * kappa;
  // Exact (Sterbenz) for eta_esc >= 1/2, so kappa_in + kappa_h == kappa bitwise.
  p.kappa_h_ = kappa - p.kappa_in_;
  p.gamma_ = gamma;
  p.omega_c_ = omega_c;
  p.gamma_rg_ = gamma_rg;
  return p;
}

CavityParams CavityParams::from_lambda(double eta_esc, double coop, double lambda_dn,
                                       double kappa, double gamma, double gamma_rg) {
  require(std::isfinite(lambda_dn) && lambda_dn >= 1.0, "Lambda_dn must be >= 1");
  require(gamma > 0.0 && gamma_rg > 0.0, "gamma and gamma_rg must be > 0");
  const double omega_c = std::sqrt(2.0 * gamma * gamma_rg * (lambda_dn * lambda_dn - 1.0));
  return from_rates(eta_esc, coop, kappa, gamma, omega_c, gamma_rg);
}

CavityParams CavityParams::with_coop(double coop) const {
  return from_rates(eta_esc_, coop, kappa_, gamma_, omega_c_, gamma_rg_);
}

CavityParams CavityParams::with_omega_c(double omega_c) const {
  return from_rates(eta_esc_, coop_, kappa_, gamma_, omega_c, gamma_rg_);
}

double OutputAmplitudes::energy_residual() const {
  const double in = std::norm(alpha_in);
  const double out = std::norm(r) + std::norm(a) + std::norm(m);
  if (in == 0.0) return out;
  return (out - in) / in;
}

double lambda(const CavityParams& params, QubitBranch branch) {
  if (branch == QubitBranch::Up) return 1.0;
  const double w = params.omega_c();
  return std::sqrt(1.0 + w * w / (2.0 * params.gamma() * params.gamma_rg()));
}

Complex effective_cooperativity(const CavityParams& params, const DetuningSet& det,
                                QubitBranch branch) {
  const double gamma = params.gamma();
  Complex denom = Complex(gamma, -det.delta_s);
  const TwoPhotonDetuning& d2 = det.two_photon(branch);
  if (!d2.is_infinite()) {
    const Complex coupling_denom = Complex(2.0 * params.gamma_rg(), -4.0 * d2.value());
    if (std::abs(coupling_denom) == 0.0)
      throw NumericalError("singular denominator 2 gamma_rg - 4 i Delta_2");
    denom += params.omega_c() * params.omega_c() / coupling_denom;
  }
  if (std::abs(denom) == 0.0) throw NumericalError("singular effective-cooperativity denominator");
  return params.coop() * gamma / denom;
}

namespace {

Complex cavity_denominator(const CavityParams& params, const DetuningSet& det,
                           QubitBranch branch) {
  const double kappa = params.kappa();
  const Complex d = kappa - kI * det.delta_c + kappa * effective_cooperativity(params, det, branch);
  if (std::abs(d) == 0.0) throw NumericalError("singular cavity denominator");
  return d;
}

}  // namespace

Complex reflection_coefficient(const CavityParams& params, const DetuningSet& det,
                               QubitBranch branch) {
  const Complex d = cavity_denominator(params, det, branch);
  return -1.0 + 2.0 * params.eta_esc() * params.kappa() / d;
}

OutputAmplitudes output_amplitudes(const CavityParams& params, QubitBranch branch,
                                   Complex alpha_in) {
  const double eta = params.eta_esc();
  const double coop = params.coop();
  const double lam = lambda(params, branch);
  const double denom = 1.0 + coop / (lam * lam);

  OutputAmplitudes out;
  out.alpha_in = alpha_in;
  out.r = (-1.0 + 2.0 * eta / denom) * alpha_in;
  out.a = 2.0 * std::sqrt(eta * coop) / (lam * denom) * alpha_in;
  out.m = 2.0 * std::sqrt((1.0 - eta) * eta) / denom * alpha_in;
  return out;
}

OutputAmplitudes detuned_output_amplitudes(const CavityParams& params, const DetuningSet& det,
                                           QubitBranch branch, Complex alpha_in) {
  const double eta = params.eta_esc();
  const double kappa = params.kappa();
  const Complex c_eff = effective_cooperativity(params, det, branch);
  const Complex d = cavity_denominator(params, det, branch);

  OutputAmplitudes out;
  out.alpha_in = alpha_in;
  out.r = (-1.0 + 2.0 * eta * kappa / d) * alpha_in;
  out.a = 2.0 * kappa * std::sqrt(eta * std::max(0.0, c_eff.real())) / d * alpha_in;
  out.m = 2.0 * kappa * std::sqrt(eta * (1.0 - eta)) / d * alpha_in;
  return out;
}

double min_pulse_duration(const CavityParams& params, double mean_photons) {
  if (!(mean_photons >= 0.0)) throw ParameterError("mean photon number must be >= 0");
  return mean_photons / (2.0 * params.kappa());
}

}  // namespace catcav
