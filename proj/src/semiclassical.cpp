#include "catcav/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catcav/errors.hpp"

namespace catcav {

namespace {

constexpr Complex kI{0.0, 1.0};

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

RoundTripParams RoundTripParams::from_target(const CavityParams& target, double finesse,
                                             double k, double medium_length) {
  if (!(finesse > 1.0)) throw ParameterError("finesse must be > 1");
  if (!(k > 0.0 && medium_length > 0.0))
    throw ParameterError("wavenumber and medium length must be > 0");

  RoundTripParams rt(target);
  rt.finesse_ = finesse;
  rt.k_ = k;
  rt.length_ = medium_length;
  rt.t_rt_ = std::numbers::pi / (target.kappa() * finesse);
  rt.d_t_ = 2.0 * std::numbers::pi * target.coop() / finesse;
  rt.chi0_ = rt.d_t_ / (k * medium_length);
  rt.rho_in_ = std::exp(-target.kappa_in() * rt.t_rt_);
  rt.tau_in_ = std::sqrt(-std::expm1(-2.0 * target.kappa_in() * rt.t_rt_));
  rt.rho_h_ = std::exp(-target.kappa_h() * rt.t_rt_);
  return rt;
}

double RoundTripParams::cooperativity() const {
  return d_t_ * finesse_ / (2.0 * std::numbers::pi);
}

Complex susceptibility(const RoundTripParams& rt, const DetuningSet& det, QubitBranch branch) {
  const CavityParams& p = rt.atoms();
  Complex denom(p.gamma(), -det.delta_s);
  const TwoPhotonDetuning& d2 = det.two_photon(branch);
  if (!d2.is_infinite()) {
    const Complex cd(2.0 * p.gamma_rg(), -4.0 * d2.value());
    if (std::abs(cd) == 0.0) throw NumericalError("singular denominator 2 gamma_rg - 4 i Delta_2");
    denom += p.omega_c() * p.omega_c() / cd;
  }
  if (std::abs(denom) == 0.0) throw NumericalError("singular susceptibility denominator");
  return kI * rt.chi0() * p.gamma() / denom;
}

Complex medium_transmission(const RoundTripParams& rt, const DetuningSet& det,
                            QubitBranch branch) {
  return std::exp(0.5 * kI * rt.k() * rt.medium_length() * susceptibility(rt, det, branch));
}

RoundTripFields intracavity_and_outputs(const RoundTripParams& rt, const DetuningSet& det,
                                        QubitBranch branch, Complex alpha_in) {
  const CavityParams& p = rt.atoms();
  const double t_rt = rt.t_rt();
  const Complex phase_kl = 0.5 * kI * rt.k() * rt.medium_length() * susceptibility(rt, det, branch);
  const Complex tau = std::exp(phase_kl);

  // ln(rho_in rho_h tau e^{i delta_c T_rt}); log(rho_in rho_h) = -kappa T_rt.
  const Complex log_round_trip = -p.kappa() * t_rt + phase_kl + kI * det.delta_c * t_rt;
  if (log_round_trip.real() >= 0.0)
    throw NumericalError("round-trip gain >= 1: geometric series diverges");
  const Complex one_minus_loop = -expm1(log_round_trip);

  const Complex c = rt.tau_in() * alpha_in / one_minus_loop;
  const Complex returning = rt.rho_h() * tau * std::exp(kI * det.delta_c * t_rt) * c;

  RoundTripFields f;
  f.c = c;
  f.out.alpha_in = alpha_in;
  f.out.r = -rt.rho_in() * alpha_in + rt.tau_in() * returning;
  f.out.a = std::sqrt(-std::expm1(2.0 * phase_kl.real())) * c;
  f.out.m = std::sqrt(-std::expm1(-2.0 * p.kappa_h() * t_rt)) * tau * c;
  return f;
}

bool single_mode_regime(const RoundTripParams& rt, const DetuningSet& det, double small) {
  return 1.0 / rt.finesse() < small && rt.optical_depth() < small &&
         std::abs(det.delta_c) * rt.t_rt() < small;
}

double ConvergencePoint::max_err() const { return std::max({err_r, err_a, err_m}); }

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ParameterError("need >= 2 points for a slope");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw NumericalError("log-log slope needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const CavityParams& target,
                                   const std::vector<double>& finesse_grid,
                                   const DetuningSet& det) {
  ConvergenceStudy study;
  std::vector<double> fs;
  std::vector<double> errs;
  for (double finesse : finesse_grid) {
    const RoundTripParams rt = RoundTripParams::from_target(target, finesse);
    ConvergencePoint pt{finesse, 0.0, 0.0, 0.0};
    for (QubitBranch b : {QubitBranch::Up, QubitBranch::Dn}) {
      const OutputAmplitudes exact = intracavity_and_outputs(rt, det, b, 1.0).out;
      const OutputAmplitudes closed = detuned_output_amplitudes(target, det, b, 1.0);
      pt.err_r = std::max(pt.err_r, std::abs(exact.r - closed.r));
      pt.err_a = std::max(pt.err_a, std::abs(exact.a - closed.a));
      pt.err_m = std::max(pt.err_m, std::abs(exact.m - closed.m));
    }
    study.points.push_back(pt);
    fs.push_back(finesse);
    errs.push_back(pt.max_err());
  }
  // Models that agree to rounding (e.g. an empty cavity) have no slope.
  const bool fittable =
      fs.size() >= 2 && std::all_of(errs.begin(), errs.end(), [](double e) { return e > 0.0; });
  study.slope = fittable ? log_log_slope(fs, errs) : std::numeric_limits<double>::quiet_NaN();
  return study;
}

}  // namespace catcav
