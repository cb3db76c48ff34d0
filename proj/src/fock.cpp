#include "catcav/fock.hpp"

#include <algorithm>
#include <cmath>

#include "catcav/errors.hpp"

namespace catcav::fock {

namespace {

double sqrt_binomial(int n, int k) {
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

template <typename T>
std::vector<T> powers(T base, int count) {
  std::vector<T> p(count + 1);
  p[0] = T(1.0);
  for (int i = 1; i <= count; ++i) p[i] = p[i - 1] * base;
  return p;
}

void check_cutoff(int cutoff) {
  if (cutoff < 0) throw ParameterError("Fock cutoff must be >= 0");
}

}  // namespace

int cutoff_for(double abs_alpha) {
  return static_cast<int>(std::ceil(abs_alpha * abs_alpha + 10.0 * abs_alpha + 20.0));
}

std::vector<Complex> coherent_state(Complex alpha, int cutoff) {
  check_cutoff(cutoff);
  std::vector<Complex> psi(cutoff + 1);
  psi[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) psi[n] = psi[n - 1] * alpha / std::sqrt(double(n));
  return psi;
}

double norm_squared(const std::vector<Complex>& psi) {
  double s = 0.0;
  for (const Complex& c : psi) s += std::norm(c);
  return s;
}

double TwoModeState::norm_squared() const {
  double s = 0.0;
  for (const Complex& c : amp) s += std::norm(c);
  return s;
}

TwoModeState beam_splitter_vacuum_port(const std::vector<Complex>& psi, double loss) {
  if (!(loss >= 0.0 && loss <= 1.0)) throw ParameterError("loss must lie in [0, 1]");
  const int cutoff = static_cast<int>(psi.size()) - 1;
  const auto tau_pow = powers(std::sqrt(1.0 - loss), cutoff);
  const auto rho_pow = powers(std::sqrt(loss), cutoff);

  TwoModeState out;
  out.cutoff = cutoff;
  out.amp.assign(std::size_t(cutoff + 1) * (cutoff + 1), Complex{});
  for (int n = 0; n <= cutoff; ++n) {
    for (int k = 0; k <= n; ++k) {
      out.at(n - k, k) += psi[n] * sqrt_binomial(n, k) * tau_pow[n - k] * rho_pow[k];
    }
  }
  return out;
}

namespace {

Complex mean_field(const TwoModeState& s) {
  Complex acc{};
  for (int m = 1; m <= s.cutoff; ++m)
    for (int k = 0; k <= s.cutoff; ++k)
      acc += std::conj(s.at(m - 1, k)) * std::sqrt(double(m)) * s.at(m, k);
  return acc / s.norm_squared();
}

}  // namespace

BeamSplitterReference beam_splitter_reference(Complex alpha_up, Complex alpha_dn, double loss,
                                              int cutoff) {
  const TwoModeState up = beam_splitter_vacuum_port(coherent_state(alpha_up, cutoff), loss);
  const TwoModeState dn = beam_splitter_vacuum_port(coherent_state(alpha_dn, cutoff), loss);
  const int dim = cutoff + 1;

  // Tr_b |dn><up|, an operator on the transmitted mode.
  double frob_sq = 0.0;
  for (int m = 0; m < dim; ++m) {
    for (int mp = 0; mp < dim; ++mp) {
      Complex x{};
      for (int k = 0; k < dim; ++k) x += dn.at(m, k) * std::conj(up.at(mp, k));
      frob_sq += std::norm(x);
    }
  }
  const double n_up = up.norm_squared();
  const double n_dn = dn.norm_squared();

  BeamSplitterReference ref;
  ref.visibility_factor = std::sqrt(frob_sq / (n_up * n_dn));
  ref.mean_field_up = mean_field(up);
  ref.mean_field_dn = mean_field(dn);
  ref.norm_deficit = 1.0 - std::min(n_up, n_dn);
  return ref;
}

ModeOverlapReference coherent_overlap_in_modes(Complex c_updn, Complex alpha_up,
                                               Complex alpha_dn, int cutoff) {
  check_cutoff(cutoff);
  if (std::abs(c_updn) > 1.0 + 1e-12) throw ParameterError("|C_updn| must be <= 1");
  const double c_perp = std::sqrt(std::max(0.0, 1.0 - std::norm(c_updn)));
  const auto c_pow = powers(c_updn, cutoff);
  const auto s_pow = powers(c_perp, cutoff);

  // Amplitudes in the (c_up, c_perp) Fock basis |j, k>.
  TwoModeState bra;
  TwoModeState ket;
  bra.cutoff = ket.cutoff = cutoff;
  bra.amp.assign(std::size_t(cutoff + 1) * (cutoff + 1), Complex{});
  ket.amp.assign(bra.amp.size(), Complex{});

  const auto up = coherent_state(alpha_up, cutoff);
  for (int j = 0; j <= cutoff; ++j) bra.at(j, 0) = up[j];

  // |n>_{c_dn} = sum_k sqrt(binom(n,k)) c_perp^k c^{n-k} |n-k, k>
  const auto dn = coherent_state(alpha_dn, cutoff);
  for (int n = 0; n <= cutoff; ++n)
    for (int k = 0; k <= n; ++k)
      ket.at(n - k, k) += dn[n] * sqrt_binomial(n, k) * s_pow[k] * c_pow[n - k];

  Complex overlap{};
  for (std::size_t i = 0; i < bra.amp.size(); ++i) overlap += std::conj(bra.amp[i]) * ket.amp[i];

  return {overlap, 1.0 - std::min(bra.norm_squared(), ket.norm_squared())};
}

}  // namespace catcav::fock
