#pragma once

// Cat states rho = f|up,a_up><up,a_up| + (1-f)|dn,a_dn><dn,a_dn|
//                 + V sqrt(f(1-f)) (e^{i theta}|dn,a_dn><up,a_up| + h.c.)
// and the photon-loss budget of their generation by cavity reflection.

#include <complex>
#include <vector>

#include "catcav/core_model.hpp"

namespace catcav {

using Amplitude = std::complex<double>;

// Wraps into (-pi, pi].
double normalize_phase(double theta);

class CatState {
 public:
  // Throws ParameterError unless f, visibility in [0,1] and amplitudes finite.
  CatState(double f, double theta, double visibility, Amplitude alpha_up, Amplitude alpha_dn);

  double f() const { return f_; }
  double theta() const { return theta_; }
  double visibility() const { return visibility_; }
  Amplitude alpha_up() const { return alpha_up_; }
  Amplitude alpha_dn() const { return alpha_dn_; }

 private:
  double f_;
  double theta_;
  double visibility_;
  Amplitude alpha_up_;
  Amplitude alpha_dn_;
};

// <a|b> for coherent states.
Complex coherent_overlap(Amplitude a, Amplitude b);

// |alpha_up - alpha_dn| / 2.
double effective_size(const CatState& cat);

// Passes the light through a lossy path with intensity loss `loss` in [0,1).
CatState apply_beam_splitter(const CatState& cat, double loss);

struct LostLight {
  Amplitude a;  // spontaneous emission
  Amplitude m;  // mirror loss
};

struct GeneratedCat {
  CatState cat;
  LostLight lost_up;
  LostLight lost_dn;
};

// Reflects |alpha_in> off the cavity with the qubit prepared as
// sqrt(f)|up> + sqrt(1-f)|dn> (visibility v0, phase theta0) and traces out
// the lost light. `mode_overlap` is the overlap C_updn of the spatial modes
// of the spontaneously emitted light; 1 means identical modes. A complex
// value also carries the phase correction from Im C_updn.
GeneratedCat generate_cat(const CavityParams& params, double f, double v0, double theta0,
                          Complex alpha_in, Complex mode_overlap = 1.0);

struct LossBudget {
  double l_cav;   // reduction of effective cat size
  double l_a;     // spontaneous-emission contribution to visibility loss
  double l_m;     // HR-mirror contribution
  double l_mode;  // spatial-mode-mismatch contribution
  double l_ell;   // l_a + l_m + l_mode
  double l_gen;   // visibility loss per alpha_out^2
  double a_mode;  // prefactor of l_mode

  // 0 <= l_ell <= l_gen <= l_cav <= 1 (l_cav = 1 only at Lambda_dn = 1).
  bool ordered() const;
};

// `b_mode` = 1 - Re C_updn; 0 means perfect spatial mode overlap.
LossBudget loss_budget(const CavityParams& params, double b_mode = 0.0);

// V_out / V0 = exp(-2 l_ell |alpha_in|^2).
double visibility_ratio_from_budget(const LossBudget& budget, double alpha_in_sq);

// 1 - eta (Lambda+1)^2 / (Lambda^2 + C), eta = eta_esc C/(C+1).
double loss_gen_closed_form(double eta_esc, double coop, double lambda_dn);

// d L_gen / d Lambda_dn.
double loss_gen_derivative(double eta_esc, double coop, double lambda_dn);

// d^2 L_gen / d Lambda_dn^2 at Lambda_dn = C: 2 eta_esc / (C (C+1)^2).
double loss_gen_curvature_at_optimum(double eta_esc, double coop);

// Lambda_dn minimizing L_gen: C. For 0 < C < 1 the optimum lies on the
// boundary Lambda_dn = 1. Throws ParameterError for C = 0.
double optimal_lambda(const CavityParams& params);

// alpha_out^2 at which V_out/V0 reaches `visibility_ratio` for a given L_gen:
// -ln(ratio) (1 - L_gen) / (2 L_gen). Throws ParameterError for L_gen = 0.
double photon_number_budget(double l_gen, double visibility_ratio);

// Mean photon number alpha_out^2 reachable at Lambda_dn = C before V_out/V0
// drops below `visibility_ratio`. Throws ParameterError if L_gen = 0
// (eta_esc = 1), where the budget is unbounded.
double max_photon_number(const CavityParams& params, double visibility_ratio);

struct Figure2Row {
  double lambda_dn;
  double l_a;
  double l_m;
  double l_gen;
  double a_up_over_in;
  double a_dn_over_in;
};

// Log-spaced grid on [lo, hi]; `extra` is merged in if it lies in range.
std::vector<double> log_grid(double lo, double hi, int points, double extra = 0.0);

// Loss coefficients and emitted amplitudes along the grid (Lambda_dn >= 1).
std::vector<Figure2Row> sweep_figure2(double eta_esc, double coop,
                                      const std::vector<double>& lambda_grid);

}  // namespace catcav
