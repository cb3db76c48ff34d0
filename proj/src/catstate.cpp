#include "catcav/catstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catcav/errors.hpp"

namespace catcav {

double normalize_phase(double theta) {
  constexpr double pi = std::numbers::pi;
  double t = std::remainder(theta, 2.0 * pi);
  if (t <= -pi) t += 2.0 * pi;
  return t;
}

CatState::CatState(double f, double theta, double visibility, Amplitude alpha_up,
                   Amplitude alpha_dn)
    : f_(f),
      theta_(normalize_phase(theta)),
      visibility_(visibility),
      alpha_up_(alpha_up),
      alpha_dn_(alpha_dn) {
  if (!(f >= 0.0 && f <= 1.0)) throw ParameterError("population fraction f must lie in [0, 1]");
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw ParameterError("visibility must lie in [0, 1]");
  if (!std::isfinite(theta)) throw ParameterError("phase must be finite");
  if (!std::isfinite(std::abs(alpha_up)) || !std::isfinite(std::abs(alpha_dn)))
    throw ParameterError("coherent amplitudes must be finite");
}

namespace {

// log <a| b> in a pair of modes with overlap c (c = 1: same mode).
Complex log_overlap(Amplitude a, Amplitude b, Complex c = 1.0) {
  return -0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * c * b;
}

}  // namespace

Complex coherent_overlap(Amplitude a, Amplitude b) { return std::exp(log_overlap(a, b)); }

double effective_size(const CatState& cat) {
  return 0.5 * std::abs(cat.alpha_up() - cat.alpha_dn());
}

CatState apply_beam_splitter(const CatState& cat, double loss) {
  if (!(loss >= 0.0 && loss < 1.0)) throw ParameterError("beam-splitter loss must lie in [0, 1)");
  const double tau = std::sqrt(1.0 - loss);
  const double rho = std::sqrt(loss);
  const double a_eff = effective_size(cat);

  // |<rho a_up | rho a_dn>| = exp(-2 loss a_eff^2); its phase shifts theta.
  const double visibility = cat.visibility() * std::exp(-2.0 * loss * a_eff * a_eff);
  const double phase =
      log_overlap(rho * cat.alpha_up(), rho * cat.alpha_dn()).imag();
  return CatState(cat.f(), cat.theta() + phase, visibility, tau * cat.alpha_up(),
                  tau * cat.alpha_dn());
}

GeneratedCat generate_cat(const CavityParams& params, double f, double v0, double theta0,
                          Complex alpha_in, Complex mode_overlap) {
  if (!(v0 >= 0.0 && v0 <= 1.0)) throw ParameterError("v0 must lie in [0, 1]");
  if (std::abs(mode_overlap) > 1.0 + 1e-12)
    throw ParameterError("mode overlap must satisfy |C_updn| <= 1");

  const OutputAmplitudes up = output_amplitudes(params, QubitBranch::Up, alpha_in);
  const OutputAmplitudes dn = output_amplitudes(params, QubitBranch::Dn, alpha_in);

  // <l_up|l_dn> = <a_up|a_dn> <m_up|m_dn>
  const Complex log_ell = log_overlap(up.a, dn.a, mode_overlap) + log_overlap(up.m, dn.m);
  const double visibility = v0 * std::exp(log_ell.real());

  return GeneratedCat{CatState(f, theta0 + log_ell.imag(), visibility, up.r, dn.r),
                      LostLight{up.a, up.m}, LostLight{dn.a, dn.m}};
}

bool LossBudget::ordered() const {
  return 0.0 <= l_ell && l_ell <= l_gen && l_gen <= l_cav && l_cav <= 1.0;
}

LossBudget loss_budget(const CavityParams& params, double b_mode) {
  if (!(b_mode >= 0.0 && b_mode <= 2.0)) throw ParameterError("b_mode must lie in [0, 2]");
  const double eta_esc = params.eta_esc();
  const double coop = params.coop();
  const double lam = lambda(params, QubitBranch::Dn);
  const double lam2 = lam * lam;
  const double eta = eta_esc * coop / (coop + 1.0);

  const double size_factor = eta * (lam2 - 1.0) / (lam2 + coop);
  const double absorb = (lam - coop) * (lam - 1.0) / (lam2 + coop);

  LossBudget b{};
  b.l_cav = 1.0 - size_factor * size_factor;
  b.l_a = eta / (coop + 1.0) * absorb * absorb;
  b.l_m = (1.0 - eta_esc) / eta_esc * size_factor * size_factor;
  b.a_mode = 2.0 * eta_esc * coop / ((1.0 + coop) * lam * (1.0 + coop / lam2));
  b.l_mode = b.a_mode * b_mode;
  b.l_ell = b.l_a + b.l_m + b.l_mode;

  // 1 - l_cav taken as size_factor^2 directly to avoid cancellation near Lambda_dn = 1.
  const double denom = size_factor * size_factor + b.l_ell;
  // At Lambda_dn = 1 both numerator and denominator vanish; take the limit.
  b.l_gen = denom > 0.0 ? b.l_ell / denom : loss_gen_closed_form(eta_esc, coop, lam);
  return b;
}

double visibility_ratio_from_budget(const LossBudget& budget, double alpha_in_sq) {
  return std::exp(-2.0 * budget.l_ell * alpha_in_sq);
}

double loss_gen_closed_form(double eta_esc, double coop, double lambda_dn) {
  const double eta = eta_esc * coop / (coop + 1.0);
  return 1.0 - eta * (lambda_dn + 1.0) * (lambda_dn + 1.0) / (lambda_dn * lambda_dn + coop);
}

double loss_gen_derivative(double eta_esc, double coop, double lambda_dn) {
  const double eta = eta_esc * coop / (coop + 1.0);
  const double d = lambda_dn * lambda_dn + coop;
  return 2.0 * eta * (lambda_dn + 1.0) * (lambda_dn - coop) / (d * d);
}

double loss_gen_curvature_at_optimum(double eta_esc, double coop) {
  return 2.0 * eta_esc / (coop * (coop + 1.0) * (coop + 1.0));
}

double optimal_lambda(const CavityParams& params) {
  if (!(params.coop() > 0.0)) throw ParameterError("optimal Lambda_dn requires C > 0");
  return std::max(params.coop(), 1.0);
}

double photon_number_budget(double l_gen, double visibility_ratio) {
  if (!(visibility_ratio > 0.0 && visibility_ratio < 1.0))
    throw ParameterError("visibility ratio must lie in (0, 1)");
  if (!(l_gen < 1.0)) throw ParameterError("L_gen must be < 1");
  if (l_gen <= 0.0) throw ParameterError("L_gen = 0: photon number is unbounded");
  return -std::log(visibility_ratio) * (1.0 - l_gen) / (2.0 * l_gen);
}

double max_photon_number(const CavityParams& params, double visibility_ratio) {
  // At Lambda_dn = C the closed form collapses to L_gen = 1 - eta_esc.
  return photon_number_budget(1.0 - params.eta_esc(), visibility_ratio);
}

std::vector<double> log_grid(double lo, double hi, int points, double extra) {
  if (!(lo > 0.0 && hi > lo && points >= 2)) throw ParameterError("invalid log grid");
  std::vector<double> grid;
  grid.reserve(points + 1);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid.push_back(lo * std::exp(step * i));
  grid.back() = hi;
  if (extra >= lo && extra <= hi &&
      std::find(grid.begin(), grid.end(), extra) == grid.end()) {
    grid.insert(std::upper_bound(grid.begin(), grid.end(), extra), extra);
  }
  return grid;
}

std::vector<Figure2Row> sweep_figure2(double eta_esc, double coop,
                                      const std::vector<double>& lambda_grid) {
  std::vector<Figure2Row> rows;
  rows.reserve(lambda_grid.size());
  for (double lam : lambda_grid) {
    const CavityParams p = CavityParams::from_lambda(eta_esc, coop, lam);
    const LossBudget b = loss_budget(p);
    const OutputAmplitudes up = output_amplitudes(p, QubitBranch::Up, 1.0);
    const OutputAmplitudes dn = output_amplitudes(p, QubitBranch::Dn, 1.0);
    rows.push_back({lam, b.l_a, b.l_m, loss_gen_closed_form(eta_esc, coop, lam), up.a.real(),
                    dn.a.real()});
  }
  return rows;
}

}  // namespace catcav
