#include "catcav/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "catcav/errors.hpp"

namespace catcav {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int resolve_threads(int requested, int work) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("CATCAV_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = int(std::thread::hardware_concurrency());
  return std::clamp(t, 1, std::max(1, work));
}

}  // namespace

double CloudGeometry::wavenumber() const {
  if (!(wavelength > 0.0)) throw ParameterError("wavelength must be > 0");
  return 2.0 * std::numbers::pi / wavelength;
}

Vec3 CloudGeometry::k_in() const {
  const double n = norm(k_direction);
  if (!(n > 0.0)) throw ParameterError("propagation direction must be nonzero");
  const double k = wavenumber();
  return {k * k_direction[0] / n, k * k_direction[1] / n, k * k_direction[2] / n};
}

double CloudGeometry::mean_sigma() const { return std::cbrt(sigmas[0] * sigmas[1] * sigmas[2]); }

double CloudGeometry::zeta() const { return std::sqrt(2.0) * wavenumber() * mean_sigma(); }

CloudGeometry CloudGeometry::isotropic() const {
  CloudGeometry g = *this;
  const double s = mean_sigma();
  g.sigmas = {s, s, s};
  return g;
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

AtomCloud sample_cloud(const CloudGeometry& geometry, int n_atoms, std::uint64_t stream) {
  for (double s : geometry.sigmas)
    if (!(s > 0.0)) throw ParameterError("cloud radii must be > 0");
  std::mt19937_64 rng(stream);
  std::normal_distribution<double> normal(0.0, 1.0);
  AtomCloud cloud;
  cloud.k_in = geometry.k_in();
  cloud.positions.resize(n_atoms);
  for (Vec3& x : cloud.positions)
    for (int a = 0; a < 3; ++a) x[a] = geometry.sigmas[a] * normal(rng);
  return cloud;
}

RunResult run_single(const MonteCarloConfig& config, int run_index) {
  const CloudGeometry geometry = config.isotropic ? config.geometry.isotropic() : config.geometry;
  const AtomCloud cloud =
      sample_cloud(geometry, config.n_atoms, stream_seed(config.seed, std::uint64_t(run_index)));
  const OverlapMatrix s(cloud, config.eps);
  const CollectiveOverlap co = collective_overlap(s);

  Complex sum = 0.0;
  double sum_sq = 0.0;
  const int n = s.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      sum += s(i, j);
      sum_sq += std::norm(s(i, j));
    }
  const double pairs = 0.5 * n * (n - 1.0);
  return {co.b_up_dn, co.c_up_dn, sum / pairs, sum_sq / pairs};
}

Estimate mean_and_stderr(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(n);
  if (n < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / double(n - 1) / double(n))};
}

MonteCarloStats monte_carlo(const MonteCarloConfig& config) {
  if (config.n_atoms < 2) throw ParameterError("Monte-Carlo needs at least 2 atoms");
  if (config.n_runs < 2) throw ParameterError("Monte-Carlo needs at least 2 runs for a standard error");

  std::vector<RunResult> runs(config.n_runs);
  const int n_threads = resolve_threads(config.threads, config.n_runs);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < config.n_runs; r = next++) {
      try {
        runs[r] = run_single(config, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> b, re_c, im_c, re_s, im_s, sq;
  for (const RunResult& r : runs) {
    b.push_back(r.b);
    re_c.push_back(r.c.real());
    im_c.push_back(r.c.imag());
    re_s.push_back(r.s12_mean.real());
    im_s.push_back(r.s12_mean.imag());
    sq.push_back(r.s12_abs_sq);
  }
  MonteCarloStats st;
  st.n_atoms = config.n_atoms;
  st.n_runs = config.n_runs;
  st.b = mean_and_stderr(b);
  st.re_c = mean_and_stderr(re_c);
  st.im_c = mean_and_stderr(im_c);
  st.re_s12 = mean_and_stderr(re_s);
  st.im_s12 = mean_and_stderr(im_s);
  st.s12_abs_sq = mean_and_stderr(sq);
  const double rms = std::sqrt(st.s12_abs_sq.mean);
  st.s12_rms = {rms, rms > 0.0 ? st.s12_abs_sq.sem / (2.0 * rms) : 0.0};
  return st;
}

namespace {

double error_scale(double chi2, std::size_t n, std::size_t params, ErrorScaling scaling) {
  if (scaling == ErrorScaling::Fixed || n <= params) return 1.0;
  const double red = chi2 / double(n - params);
  if (scaling == ErrorScaling::Birge) return std::sqrt(std::max(1.0, red));
  return std::sqrt(red);
}

void check_fit_input(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& w, std::size_t min_points) {
  if (x.size() != y.size() || x.size() != w.size())
    throw ParameterError("fit inputs must have equal lengths");
  if (x.size() < min_points) throw ParameterError("too few points for the fit");
  for (double wi : w)
    if (!(wi > 0.0) || !std::isfinite(wi)) throw ParameterError("fit weights must be positive");
}

}  // namespace

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w, ErrorScaling scaling) {
  check_fit_input(x, y, w, 2);
  double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double det = s * sxx - sx * sx;
  if (!(det > 0.0)) throw NumericalError("degenerate abscissae in line fit");
  LineFit f;
  f.slope = (s * sxy - sx * sy) / det;
  f.intercept = (sxx * sy - sx * sxy) / det;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    chi2 += w[i] * r * r;
  }
  const double k = error_scale(chi2, x.size(), 2, scaling);
  f.slope_err = k * std::sqrt(s / det);
  f.intercept_err = k * std::sqrt(sxx / det);
  return f;
}

LineFit fit_fixed_slope(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& w, double slope, ErrorScaling scaling) {
  check_fit_input(x, y, w, 1);
  double s = 0, sz = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    sz += w[i] * (y[i] - slope * x[i]);
  }
  LineFit f;
  f.slope = slope;
  f.intercept = sz / s;
  double chi2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - slope * x[i] - f.intercept;
    chi2 += w[i] * r * r;
  }
  f.intercept_err = error_scale(chi2, x.size(), 1, scaling) / std::sqrt(s);
  return f;
}

double PowerLawFit::extrapolate(int n_atoms) const { return c3 * std::pow(double(n_atoms), -3.0); }

PowerLawFit fit_power_law(const std::vector<PowerLawPoint>& points) {
  PowerLawFit fit;
  if (points.size() < 2) {
    fit.message = "need at least 2 cloud sizes";
    return fit;
  }
  std::vector<double> x, y, w, ones;
  bool weighted = true;
  for (const PowerLawPoint& p : points) {
    if (!(p.b.mean > 0.0)) {
      fit.message = "non-positive mean B at N = " + std::to_string(p.n_atoms);
      return fit;
    }
    x.push_back(std::log(double(p.n_atoms)));
    y.push_back(std::log(p.b.mean));
    const double sigma_log = p.b.sem / p.b.mean;
    if (!(sigma_log > 0.0) || !std::isfinite(sigma_log)) weighted = false;
    w.push_back(sigma_log > 0.0 ? 1.0 / (sigma_log * sigma_log) : 0.0);
    ones.push_back(1.0);
  }
  if (!weighted) w = ones;
  const ErrorScaling scaling = weighted ? ErrorScaling::Birge : ErrorScaling::ByResiduals;

  const LineFit fixed = fit_fixed_slope(x, y, w, -3.0, scaling);
  fit.c3 = std::exp(fixed.intercept);
  fit.c3_err = fit.c3 * fixed.intercept_err;

  const LineFit plain = fit_fixed_slope(x, y, ones, -3.0, ErrorScaling::ByResiduals);
  fit.c3_unweighted = std::exp(plain.intercept);
  fit.c3_unweighted_err = fit.c3_unweighted * plain.intercept_err;

  const LineFit open = fit_line(x, y, w, scaling);
  fit.free_slope = open.slope;
  fit.free_slope_err = open.slope_err;
  fit.free_prefactor = std::exp(open.intercept);
  fit.ok = true;
  if (!weighted) fit.message = "unweighted: missing standard errors";
  return fit;
}

int runs_for(int n_atoms, double total_pairs) {
  if (n_atoms < 1) throw ParameterError("cloud size must be >= 1");
  const double r = std::floor(total_pairs / (double(n_atoms) * n_atoms));
  return std::max(2, int(r));
}

PowerLawStudy power_law_study(const MonteCarloConfig& base, const std::vector<int>& n_grid,
                              double total_pairs) {
  PowerLawStudy study;
  for (int n : n_grid) {
    if (n < 3) throw ParameterError("power-law grid needs N >= 3");
    MonteCarloConfig cfg = base;
    cfg.n_atoms = n;
    cfg.n_runs = runs_for(n, total_pairs);
    cfg.seed = stream_seed(base.seed, 0x4e00000000ULL + std::uint64_t(n));
    const MonteCarloStats st = monte_carlo(cfg);
    study.points.push_back({n, cfg.n_runs, st.b});
  }
  study.fit = fit_power_law(study.points);
  return study;
}

}  // namespace catcav
