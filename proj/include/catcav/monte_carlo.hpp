#pragma once

// Monte-Carlo sampling of thermal Gaussian clouds and the N^-3 power law of
// the collective-mode overlap deficit.

#include <cstdint>
#include <string>
#include <vector>

#include "catcav/mode_overlap.hpp"

namespace catcav {

struct CloudGeometry {
  Vec3 sigmas{3.3, 4.5, 1.7};       // rms radii
  double wavelength = 0.78;          // same length unit as sigmas
  Vec3 k_direction{0.0, 0.0, 1.0};  // normalized internally

  double wavenumber() const;
  Vec3 k_in() const;
  double mean_sigma() const;  // (sx sy sz)^(1/3)
  double zeta() const;        // sqrt(2) k mean_sigma
  CloudGeometry isotropic() const;
};

struct MonteCarloConfig {
  int n_atoms = 260;
  CloudGeometry geometry;
  Polarization eps = Polarization::circular_left();
  int n_runs = 100;
  std::uint64_t seed = 0;
  bool isotropic = false;  // replace all sigmas by their geometric mean
  int threads = 0;         // 0: CATCAV_THREADS, else hardware concurrency
};

// Independent 64-bit stream seed for (master seed, index).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

AtomCloud sample_cloud(const CloudGeometry& geometry, int n_atoms, std::uint64_t stream);

struct RunResult {
  double b;
  Complex c;
  Complex s12_mean;    // mean of S_ij over i < j
  double s12_abs_sq;   // mean of |S_ij|^2 over i < j
};

RunResult run_single(const MonteCarloConfig& config, int run_index);

struct Estimate {
  double mean = 0.0;
  double sem = 0.0;  // standard error of the mean
};

struct MonteCarloStats {
  int n_atoms = 0;
  int n_runs = 0;
  Estimate b;
  Estimate re_c;
  Estimate im_c;
  Estimate re_s12;
  Estimate im_s12;
  Estimate s12_abs_sq;
  Estimate s12_rms;  // sqrt(mean |S_12|^2), error by linear propagation
};

// Runs are distributed over threads; each result lands in its own slot and
// the reduction runs in index order, so the statistics are bit-identical
// for any thread count. Requires n_runs >= 2 and n_atoms >= 2.
MonteCarloStats monte_carlo(const MonteCarloConfig& config);

Estimate mean_and_stderr(const std::vector<double>& values);

struct PowerLawPoint {
  int n_atoms;
  int n_runs;
  Estimate b;
};

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_err = 0.0;
  double slope_err = 0.0;
};

enum class ErrorScaling {
  Fixed,        // weights are inverse variances; errors from the weights alone
  ByResiduals,  // errors scaled by sqrt(reduced chi^2) (ordinary least squares)
  Birge,        // as ByResiduals, but only when reduced chi^2 > 1
};

// Weighted least squares of y = a + b x; unit weights give the ordinary fit.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w, ErrorScaling scaling);

// Fit of y = a + slope x with the slope held fixed, conventions as fit_line.
LineFit fit_fixed_slope(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& w, double slope, ErrorScaling scaling);

struct PowerLawFit {
  bool ok = false;
  std::string message;
  double c3 = 0.0;      // weighted fixed-slope fit of log B = log c3 - 3 log N
  double c3_err = 0.0;
  double c3_unweighted = 0.0;
  double c3_unweighted_err = 0.0;
  double free_slope = 0.0;
  double free_slope_err = 0.0;
  double free_prefactor = 0.0;
  double extrapolate(int n_atoms) const;  // c3 N^-3
};

// Fits B = c3 N^-3 to per-N means. Weights 1/sigma_log^2 use
// sigma_log = stderr / mean; without usable errors the fit is unweighted.
// Non-positive means are reported through ok = false.
PowerLawFit fit_power_law(const std::vector<PowerLawPoint>& points);

struct PowerLawStudy {
  std::vector<PowerLawPoint> points;
  PowerLawFit fit;
};

// Number of runs for a given cloud size: floor(total_pairs / N^2), at least 2.
int runs_for(int n_atoms, double total_pairs = 1e5);

PowerLawStudy power_law_study(const MonteCarloConfig& base, const std::vector<int>& n_grid,
                              double total_pairs = 1e5);

}  // namespace catcav
