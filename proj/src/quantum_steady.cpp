#include "catcav/quantum_steady.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "catcav/errors.hpp"

namespace catcav {

namespace {
constexpr Complex kI{0.0, 1.0};
}

namespace detail {

Vector3 solve3(Matrix3 a, Vector3 b, const std::array<const char*, 3>& pivot_names) {
  double scale = 0.0;
  for (const auto& row : a)
    for (const Complex& v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw NumericalError(std::string("singular system: ") + pivot_names[0]);

  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-14 * scale)
      throw NumericalError(std::string("singular system: vanishing ") + pivot_names[col]);
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 3; ++r) {
      const Complex f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vector3 x{};
  for (int r = 2; r >= 0; --r) {
    Complex acc = b[r];
    for (int c = r + 1; c < 3; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace detail

SteadyState solve_steady_state(const CavityParams& params, const DetuningSet& det,
                               QubitBranch branch, Complex e_in) {
  const double kappa = params.kappa();
  const double g = std::sqrt(kappa * params.gamma() * params.coop());
  const double half_omega = 0.5 * params.omega_c();
  const double drive = std::sqrt(2.0 * params.kappa_in());
  const TwoPhotonDetuning& d2 = det.two_photon(branch);

  detail::Matrix3 a{};
  detail::Vector3 b{};
  a[0] = {-(kappa - kI * det.delta_c), kI * g, 0.0};
  b[0] = -drive * e_in;
  a[1] = {kI * g, -(params.gamma() - kI * det.delta_s), kI * half_omega};
  if (d2.is_infinite()) {
    a[2] = {0.0, 0.0, 1.0};
  } else {
    a[2] = {0.0, kI * half_omega, -(0.5 * params.gamma_rg() - kI * d2.value())};
  }

  const detail::Vector3 x = detail::solve3(
      a, b,
      {"cavity denominator kappa - i Delta_c + kappa C_eff",
       "polarization denominator gamma - i Delta_s + Omega_c^2/(2 gamma_rg - 4 i Delta_2)",
       "spin-wave denominator gamma_rg/2 - i Delta_2"});

  SteadyState ss;
  ss.e_cav = x[0];
  ss.p = x[1];
  ss.s = x[2];
  ss.e_in = e_in;
  ss.e_out = drive * ss.e_cav - e_in;
  ss.e_m = std::sqrt(2.0 * params.kappa_h()) * ss.e_cav;

  double res = 0.0;
  for (int r = 0; r < 3; ++r) {
    Complex acc = -b[r];
    for (int c = 0; c < 3; ++c) acc += a[r][c] * x[c];
    res = std::max(res, std::abs(acc));
  }
  ss.max_residual = std::abs(e_in) > 0.0 ? res / std::abs(e_in) : res;
  return ss;
}

double spontaneous_amplitude(const SteadyState& ss) {
  const double in = std::norm(ss.e_in);
  const double diff = in - std::norm(ss.e_out) - std::norm(ss.e_m);
  if (diff < -1e-10 * std::max(in, 1.0))
    throw NumericalError("negative spontaneous-emission energy: inconsistent steady state");
  return std::sqrt(std::max(0.0, diff));
}

OutputAmplitudes steady_state_amplitudes(const CavityParams& params, const DetuningSet& det,
                                         QubitBranch branch, Complex alpha_in) {
  const SteadyState ss = solve_steady_state(params, det, branch, alpha_in);
  OutputAmplitudes out;
  out.alpha_in = alpha_in;
  out.r = ss.e_out;
  out.m = ss.e_m;
  out.a = spontaneous_amplitude(ss);
  return out;
}

}  // namespace catcav
