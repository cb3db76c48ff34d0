// catcav: reproduces the cat-state generation budgets, model cross-checks
// and mode-overlap Monte-Carlo results as CSV or JSON.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "catcav/catstate.hpp"
#include "catcav/core_model.hpp"
#include "catcav/errors.hpp"
#include "catcav/mode_overlap.hpp"
#include "catcav/monte_carlo.hpp"
#include "catcav/quantum_steady.hpp"
#include "catcav/semiclassical.hpp"
#include "catcav/thermal_average.hpp"
#include "config_file.hpp"
#include "json.hpp"

#ifndef CATCAV_VERSION
#define CATCAV_VERSION "unknown"
#endif

namespace {

using namespace catcav;
using json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitParameter = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// What a command produces: scalar fields, an optional table, and an optional
// fit/summary block that goes to --fit-out (or stderr) in CSV mode.
struct Result {
  json scalars = json::object();
  std::optional<Table> table;
  json summary = json::object();
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // no negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string scalar_text(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

void write_csv(std::ostream& os, const Result& r) {
  if (r.table) {
    const Table& t = *r.table;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
      os << '\n';
    }
    return;
  }
  bool first = true;
  for (const auto& [k, v] : r.scalars.items()) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  os << '\n';
  first = true;
  for (const auto& [k, v] : r.scalars.items()) {
    os << (first ? "" : ",") << scalar_text(v);
    first = false;
  }
  os << '\n';
}

json render_json(const Result& r, const json& meta) {
  json out = r.scalars;
  for (const auto& [k, v] : r.summary.items()) out[k] = v;
  if (r.table) {
    for (std::size_t c = 0; c < r.table->columns.size(); ++c) {
      json col = json::array();
      for (const auto& row : r.table->rows) col.push_back(cell_json(row[c]));
      out[r.table->columns[c]] = col;
    }
  }
  out["meta"] = meta;
  return out;
}

// JSON numbers must be finite; nan/inf become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string fit_out;
};

struct Physics {
  double eta_esc = 0.9825;
  double coop = 21.0;
  double lambda_dn = 21.0;
};

void add_common(CLI::App* sub, Common& c, bool with_fit_out) {
  sub->add_option("--seed", c.seed, "RNG master seed")->capture_default_str();
  sub->add_option("--out", c.out, "Output path (default stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  if (with_fit_out)
    sub->add_option("--fit-out", c.fit_out, "Where the fit summary goes in CSV mode (default stderr)");
}

void add_cavity(CLI::App* sub, Physics& p, bool with_lambda) {
  sub->add_option("--eta-esc", p.eta_esc, "Escape efficiency kappa_in/kappa")->capture_default_str();
  sub->add_option("--coop", p.coop, "Cooperativity C")->capture_default_str();
  if (with_lambda)
    sub->add_option("--lambda-dn", p.lambda_dn, "EIT coupling Lambda_dn")->capture_default_str();
}

void require_size(const std::vector<double>& v, std::size_t n, const char* flag) {
  if (v.size() != n)
    throw UsageError(std::string(flag) + " expects " + std::to_string(n) + " values");
}

Polarization parse_polarization(const std::string& name) {
  if (name == "circular") return Polarization::circular_left();
  if (name == "linear-x") return Polarization::linear({1.0, 0.0, 0.0});
  if (name == "linear-y") return Polarization::linear({0.0, 1.0, 0.0});
  throw UsageError("unknown polarization '" + name + "'");
}

std::vector<QubitBranch> parse_branches(const std::string& b) {
  if (b == "up") return {QubitBranch::Up};
  if (b == "dn") return {QubitBranch::Dn};
  return {QubitBranch::Up, QubitBranch::Dn};
}

// ---- amplitudes ----

struct AmplitudesArgs {
  Physics phys;
  std::string branch = "both";
  double alpha_in = 1.0;
  double delta_c = 0.0;
  double delta_s = 0.0;
  double delta2_dn = 0.0;
};

Result cmd_amplitudes(const AmplitudesArgs& a) {
  const CavityParams params = CavityParams::from_lambda(a.phys.eta_esc, a.phys.coop, a.phys.lambda_dn);
  DetuningSet det;
  det.delta_c = a.delta_c;
  det.delta_s = a.delta_s;
  det.delta2_dn = TwoPhotonDetuning::finite(a.delta2_dn);
  const bool resonant = a.delta_c == 0.0 && a.delta_s == 0.0 && a.delta2_dn == 0.0;

  Table t;
  t.columns = {"branch", "re_r", "im_r", "re_a", "im_a", "re_m", "im_m", "energy_residual"};
  for (QubitBranch b : parse_branches(a.branch)) {
    const OutputAmplitudes o = resonant ? output_amplitudes(params, b, a.alpha_in)
                                        : detuned_output_amplitudes(params, det, b, a.alpha_in);
    t.rows.push_back({std::string(to_string(b)), o.r.real(), o.r.imag(), o.a.real(), o.a.imag(),
                      o.m.real(), o.m.imag(), o.energy_residual()});
  }
  Result r;
  r.table = t;
  return r;
}

// ---- figure2 ----

struct Figure2Args {
  Physics phys;
  std::vector<double> grid{1.0, 1000.0, 400.0};
};

Result cmd_figure2(const Figure2Args& a) {
  require_size(a.grid, 3, "--lambda-grid");
  const double pts = a.grid[2];
  if (pts != std::floor(pts)) throw ParameterError("--lambda-grid point count must be an integer");
  const auto grid = log_grid(a.grid[0], a.grid[1], int(pts), a.phys.coop);
  Table t;
  t.columns = {"lambda_dn", "L_a", "L_m", "L_gen", "a_up_over_in", "a_dn_over_in"};
  for (const Figure2Row& row : sweep_figure2(a.phys.eta_esc, a.phys.coop, grid))
    t.rows.push_back({row.lambda_dn, row.l_a, row.l_m, row.l_gen, row.a_up_over_in, row.a_dn_over_in});
  Result r;
  r.table = t;
  return r;
}

// ---- figure3 ----

struct Figure3Args {
  std::vector<double> kx_grid{0.0, 50.0, 501.0};
  std::vector<double> projections{0.0, std::numbers::sqrt2 / 2.0, 1.0};
};

Result cmd_figure3(const Figure3Args& a) {
  require_size(a.kx_grid, 3, "--kx-grid");
  const double lo = a.kx_grid[0];
  const double hi = a.kx_grid[1];
  const double pts = a.kx_grid[2];
  if (!(lo >= 0.0 && hi > lo && pts >= 2 && pts == std::floor(pts)))
    throw ParameterError("--kx-grid needs 0 <= lo < hi and an integer point count >= 2");
  if (a.projections.empty()) throw ParameterError("--pol-projections needs at least one value");
  for (double p : a.projections)
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("polarization projections must lie in [0, 1]");

  Table t;
  t.columns = {"kx"};
  for (double p : a.projections) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "V_proj_%.6g", p);
    t.columns.push_back(buf);
  }
  const int n = int(pts);
  for (int i = 0; i < n; ++i) {
    const double kx = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    std::vector<Cell> row{kx};
    for (double p : a.projections) row.push_back(dipole_overlap(kx, p));
    t.rows.push_back(row);
  }
  Result r;
  r.table = t;
  return r;
}

// ---- Monte-Carlo geometry shared by figure4 and mc ----

struct CloudArgs {
  std::vector<double> sigmas{3.3, 4.5, 1.7};
  double wavelength = 0.78;
  std::string polarization = "circular";
  bool isotropic = false;
  int threads = 0;
};

void add_cloud(CLI::App* sub, CloudArgs& c) {
  sub->add_option("--sigmas", c.sigmas, "Cloud rms radii sx sy sz")->expected(3)->delimiter(',');
  sub->add_option("--wavelength", c.wavelength, "Wavelength, same unit as sigmas")->capture_default_str();
  sub->add_option("--polarization", c.polarization, "circular | linear-x | linear-y")->capture_default_str();
  sub->add_flag("--isotropic", c.isotropic, "Use the geometric-mean radius on all axes");
  sub->add_option("--threads", c.threads, "Worker threads (0: CATCAV_THREADS or all cores)");
}

MonteCarloConfig make_config(const CloudArgs& c, std::uint64_t seed) {
  require_size(c.sigmas, 3, "--sigmas");
  MonteCarloConfig cfg;
  cfg.geometry.sigmas = {c.sigmas[0], c.sigmas[1], c.sigmas[2]};
  cfg.geometry.wavelength = c.wavelength;
  cfg.eps = parse_polarization(c.polarization);
  cfg.isotropic = c.isotropic;
  cfg.threads = c.threads;
  cfg.seed = seed;
  for (double sigma : c.sigmas)
    if (!(sigma > 0.0)) throw ParameterError("--sigmas must be > 0");
  (void)cfg.geometry.wavenumber();
  return cfg;
}

// ---- figure4 ----

struct Figure4Args {
  CloudArgs cloud;
  std::vector<double> n_grid{3.0, 30.0};
  double total_pairs = 1e5;
};

Result cmd_figure4(const Figure4Args& a, std::uint64_t seed) {
  require_size(a.n_grid, 2, "--n-grid");
  const double lo = a.n_grid[0];
  const double hi = a.n_grid[1];
  if (!(lo >= 3 && hi >= lo && lo == std::floor(lo) && hi == std::floor(hi)))
    throw ParameterError("--n-grid needs integers 3 <= lo <= hi");
  if (!(a.total_pairs > 0.0)) throw ParameterError("--total-pairs must be > 0");
  std::vector<int> grid;
  for (int n = int(lo); n <= int(hi); ++n) grid.push_back(n);

  const PowerLawStudy study = power_law_study(make_config(a.cloud, seed), grid, a.total_pairs);
  Table t;
  t.columns = {"n_atoms", "n_runs", "mean_B", "stderr_B"};
  for (const PowerLawPoint& p : study.points)
    t.rows.push_back({(long long)p.n_atoms, (long long)p.n_runs, p.b.mean, p.b.sem});

  Result r;
  r.table = t;
  const PowerLawFit& f = study.fit;
  r.summary["fit_ok"] = f.ok;
  if (!f.message.empty()) r.summary["fit_message"] = f.message;
  r.summary["c3"] = num(f.c3);
  r.summary["c3_err"] = num(f.c3_err);
  r.summary["c3_unweighted"] = num(f.c3_unweighted);
  r.summary["c3_unweighted_err"] = num(f.c3_unweighted_err);
  r.summary["free_slope"] = num(f.free_slope);
  r.summary["free_slope_err"] = num(f.free_slope_err);
  r.summary["B_extrapolated_260"] = num(f.extrapolate(260));
  return r;
}

// ---- headline ----

struct HeadlineArgs {
  Physics phys;
  double visibility_ratio = std::exp(-1.0);
  bool lambda_inf = false;
};

Result cmd_headline(const HeadlineArgs& a) {
  Result r;
  const CavityParams base = CavityParams::from_lambda(a.phys.eta_esc, a.phys.coop, 1.0);
  const double lam = optimal_lambda(base);
  const double eta = a.phys.eta_esc * a.phys.coop / (a.phys.coop + 1.0);
  r.scalars["eta_esc"] = a.phys.eta_esc;
  r.scalars["coop"] = a.phys.coop;
  r.scalars["eta"] = eta;

  double l_gen = 0.0;
  if (a.lambda_inf) {
    // Lambda_dn -> infinity: L_cav -> 1 - eta^2, L_gen -> 1 - eta.
    l_gen = 1.0 - eta;
    r.scalars["lambda_dn"] = "infinity";
    r.scalars["L_gen"] = l_gen;
    r.scalars["L_cav"] = 1.0 - eta * eta;
  } else {
    const CavityParams params = CavityParams::from_lambda(a.phys.eta_esc, a.phys.coop, lam);
    const LossBudget lb = loss_budget(params);
    l_gen = lb.l_gen;
    r.scalars["lambda_opt"] = lam;
    r.scalars["L_gen"] = lb.l_gen;
    r.scalars["L_cav"] = lb.l_cav;
    r.scalars["L_a"] = lb.l_a;
    r.scalars["L_m"] = lb.l_m;
    r.scalars["A_mode"] = lb.a_mode;
  }
  r.scalars["L_gen_over_1_minus_L_gen"] = l_gen / (1.0 - l_gen);
  r.scalars["visibility_ratio"] = a.visibility_ratio;
  if (l_gen <= 0.0)
    r.scalars["alpha_out_sq_at_ratio"] = "unbounded";
  else
    r.scalars["alpha_out_sq_at_ratio"] = photon_number_budget(l_gen, a.visibility_ratio);
  return r;
}

// ---- xcheck ----

struct XcheckArgs {
  Physics phys;
  std::vector<double> finesse_grid{1e2, 1e3, 1e4, 1e5, 1e6};
  double delta_c = 0.0;
  double delta_s = 0.0;
  double delta2_dn = 0.0;
};

Result cmd_xcheck(const XcheckArgs& a) {
  if (a.finesse_grid.empty()) throw ParameterError("--finesse-grid needs at least one value");
  const CavityParams params = CavityParams::from_lambda(a.phys.eta_esc, a.phys.coop, a.phys.lambda_dn);
  DetuningSet det;
  det.delta_c = a.delta_c;
  det.delta_s = a.delta_s;
  det.delta2_dn = TwoPhotonDetuning::finite(a.delta2_dn);

  const ConvergenceStudy study = convergence_study(params, a.finesse_grid, det);
  double err_quantum = 0.0;
  double r_closed[2], r_quantum[2];
  for (QubitBranch b : {QubitBranch::Up, QubitBranch::Dn}) {
    const OutputAmplitudes c = detuned_output_amplitudes(params, det, b, 1.0);
    const OutputAmplitudes q = steady_state_amplitudes(params, det, b, 1.0);
    err_quantum = std::max({err_quantum, std::abs(c.r - q.r), std::abs(std::abs(c.a) - std::abs(q.a)),
                            std::abs(c.m - q.m)});
    r_closed[int(b)] = std::abs(c.r);
    r_quantum[int(b)] = std::abs(q.r);
  }

  Table t;
  t.columns = {"finesse",   "err_r",      "err_a",        "err_m",         "err_max",
               "err_quantum", "abs_r_up_closed", "abs_r_up_quantum", "abs_r_up_semiclassical",
               "abs_r_dn_closed", "abs_r_dn_quantum", "abs_r_dn_semiclassical"};
  for (const ConvergencePoint& p : study.points) {
    const RoundTripParams rt = RoundTripParams::from_target(params, p.finesse);
    const double s_up = std::abs(intracavity_and_outputs(rt, det, QubitBranch::Up, 1.0).out.r);
    const double s_dn = std::abs(intracavity_and_outputs(rt, det, QubitBranch::Dn, 1.0).out.r);
    t.rows.push_back({p.finesse, p.err_r, p.err_a, p.err_m, p.max_err(), err_quantum,
                      r_closed[0], r_quantum[0], s_up, r_closed[1], r_quantum[1], s_dn});
  }
  Result r;
  r.table = t;
  r.summary["convergence_slope"] = num(study.slope);
  r.summary["err_quantum"] = err_quantum;
  return r;
}

// ---- mc ----

struct McArgs {
  CloudArgs cloud;
  int n_atoms = 260;
  int runs = 100;
  Physics phys;
};

Result cmd_mc(const McArgs& a, std::uint64_t seed) {
  MonteCarloConfig cfg = make_config(a.cloud, seed);
  cfg.n_atoms = a.n_atoms;
  cfg.n_runs = a.runs;
  const MonteCarloStats st = monte_carlo(cfg);
  const CloudGeometry g = cfg.isotropic ? cfg.geometry.isotropic() : cfg.geometry;
  const LossBudget lb =
      loss_budget(CavityParams::from_lambda(a.phys.eta_esc, a.phys.coop, std::max(1.0, a.phys.coop)),
                  std::clamp(st.b.mean, 0.0, 2.0));

  Result r;
  json& s = r.scalars;
  s["n_atoms"] = st.n_atoms;
  s["n_runs"] = st.n_runs;
  s["isotropic"] = cfg.isotropic;
  s["zeta"] = g.zeta();
  s["B_mean"] = st.b.mean;
  s["B_stderr"] = st.b.sem;
  s["re_C_mean"] = st.re_c.mean;
  s["re_C_stderr"] = st.re_c.sem;
  s["im_C_mean"] = st.im_c.mean;
  s["im_C_stderr"] = st.im_c.sem;
  s["re_S12_mean"] = st.re_s12.mean;
  s["re_S12_stderr"] = st.re_s12.sem;
  s["im_S12_mean"] = st.im_s12.mean;
  s["im_S12_stderr"] = st.im_s12.sem;
  s["S12_rms"] = st.s12_rms.mean;
  s["S12_rms_stderr"] = st.s12_rms.sem;
  s["L_mode"] = lb.l_mode;
  return r;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int run(int argc, char** argv) {
  CLI::App app{"Cat-state generation in a cavity Rydberg-EIT system"};
  app.name("catcav");
  app.footer("Every subcommand also takes --config FILE (key = value lines); flags on the command line win.");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", CATCAV_VERSION);

  Common common;
  AmplitudesArgs amp;
  Figure2Args fig2;
  Figure3Args fig3;
  Figure4Args fig4;
  HeadlineArgs head;
  XcheckArgs xc;
  McArgs mc;

  auto* s_amp = app.add_subcommand("amplitudes", "Output amplitudes (r, a, m)");
  add_common(s_amp, common, false);
  add_cavity(s_amp, amp.phys, true);
  s_amp->add_option("--branch", amp.branch, "up | dn | both")
      ->check(CLI::IsMember({"up", "dn", "both"}))
      ->capture_default_str();
  s_amp->add_option("--alpha-in", amp.alpha_in, "Input coherent amplitude")->capture_default_str();
  s_amp->add_option("--delta-c", amp.delta_c, "Cavity detuning");
  s_amp->add_option("--delta-s", amp.delta_s, "Signal detuning");
  s_amp->add_option("--delta2-dn", amp.delta2_dn, "Two-photon detuning, dn branch");

  auto* s_fig2 = app.add_subcommand("figure2", "Loss coefficients versus Lambda_dn");
  add_common(s_fig2, common, false);
  add_cavity(s_fig2, fig2.phys, false);
  s_fig2->add_option("--lambda-grid", fig2.grid, "lo hi points (log-spaced)")->expected(3)->delimiter(',');

  auto* s_fig3 = app.add_subcommand("figure3", "Dipole mode overlap V versus kx");
  add_common(s_fig3, common, false);
  s_fig3->add_option("--kx-grid", fig3.kx_grid, "lo hi points (linear)")->expected(3)->delimiter(',');
  s_fig3->add_option("--pol-projections", fig3.projections, "Values of |e_ij . eps|")
      ->expected(1, 64)
      ->delimiter(',');

  auto* s_fig4 = app.add_subcommand("figure4", "Power law of B versus atom number");
  add_common(s_fig4, common, true);
  add_cloud(s_fig4, fig4.cloud);
  s_fig4->add_option("--n-grid", fig4.n_grid, "lo hi atom numbers")->expected(2)->delimiter(',');
  s_fig4->add_option("--total-pairs", fig4.total_pairs, "Runs per N: floor(total / N^2)")
      ->capture_default_str();

  auto* s_head = app.add_subcommand("headline", "Optimal operating point and photon budget");
  add_common(s_head, common, false);
  add_cavity(s_head, head.phys, false);
  s_head->add_option("--visibility-ratio", head.visibility_ratio, "Target V_out / V0 (default 1/e)");
  s_head->add_flag("--lambda-inf", head.lambda_inf, "Evaluate the Lambda_dn -> infinity limit");

  auto* s_xc = app.add_subcommand("xcheck", "Closed form versus semiclassical and quantum models");
  add_common(s_xc, common, true);
  add_cavity(s_xc, xc.phys, true);
  s_xc->add_option("--finesse-grid", xc.finesse_grid, "Finesse values")->expected(1, 64)->delimiter(',');
  s_xc->add_option("--delta-c", xc.delta_c, "Cavity detuning");
  s_xc->add_option("--delta-s", xc.delta_s, "Signal detuning");
  s_xc->add_option("--delta2-dn", xc.delta2_dn, "Two-photon detuning, dn branch");

  auto* s_mc = app.add_subcommand("mc", "Monte-Carlo collective mode overlap");
  add_common(s_mc, common, false);
  add_cloud(s_mc, mc.cloud);
  s_mc->add_option("--n-atoms", mc.n_atoms, "Atoms per cloud")->capture_default_str();
  s_mc->add_option("--runs", mc.runs, "Monte-Carlo runs")->capture_default_str();
  add_cavity(s_mc, mc.phys, false);

  const std::vector<std::string> names{"amplitudes", "figure2", "figure3", "figure4",
                                       "headline",   "xcheck",  "mc"};
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = cli::expand_config(args, names);
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Result result;
  std::string default_format = "csv";
  CLI::App* chosen = app.get_subcommands().front();
  const std::string cmd = chosen->get_name();
  if (cmd == "amplitudes") {
    result = cmd_amplitudes(amp);
  } else if (cmd == "figure2") {
    result = cmd_figure2(fig2);
  } else if (cmd == "figure3") {
    result = cmd_figure3(fig3);
  } else if (cmd == "figure4") {
    result = cmd_figure4(fig4, common.seed);
  } else if (cmd == "headline") {
    result = cmd_headline(head);
    default_format = "json";
  } else if (cmd == "xcheck") {
    result = cmd_xcheck(xc);
  } else {
    result = cmd_mc(mc, common.seed);
    default_format = "json";
  }

  const std::string format = common.format.empty() ? default_format : common.format;
  json meta;
  meta["seed"] = common.seed;
  meta["version"] = CATCAV_VERSION;
  meta["command_line"] = join_args(argc, argv);

  std::ofstream file;
  if (!common.out.empty()) {
    file.open(common.out);
    if (!file) throw UsageError("cannot open output file '" + common.out + "'");
  }
  std::ostream& os = common.out.empty() ? std::cout : file;
  if (format == "json") {
    os << render_json(result, meta).dump(2) << '\n';
  } else {
    write_csv(os, result);
    if (!result.summary.empty()) {
      json summary = result.summary;
      summary["meta"] = meta;
      if (common.fit_out.empty()) {
        std::cerr << summary.dump() << '\n';
      } else {
        std::ofstream fit(common.fit_out);
        if (!fit) throw UsageError("cannot open fit output file '" + common.fit_out + "'");
        fit << summary.dump(2) << '\n';
      }
    }
  }
  if (!os) throw UsageError("failed writing output");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
