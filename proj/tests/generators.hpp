#pragma once

// Seeded random inputs for property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "catcav/core_model.hpp"
#include "catcav/mode_overlap.hpp"

namespace gen {

inline constexpr int kCases = 1000;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  double normal() { return std::normal_distribution<double>()(eng_); }

  catcav::Complex complex_in_disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    return std::polar(r, uniform(-std::numbers::pi, std::numbers::pi));
  }

  catcav::Vec3 unit_vector() {
    catcav::Vec3 v{normal(), normal(), normal()};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
  }

  catcav::CVec3 complex_vector() {
    return {catcav::Complex(normal(), normal()), catcav::Complex(normal(), normal()),
            catcav::Complex(normal(), normal())};
  }

  // eta_esc in [0.05, 1], C log-uniform in [1e-3, 1e3] (sometimes 0),
  // Lambda_dn log-uniform in [1, 1e3].
  catcav::CavityParams cavity() {
    const double eta = coin(0.05) ? 1.0 : uniform(0.05, 1.0);
    const double coop = coin(0.05) ? 0.0 : log_uniform(1e-3, 1e3);
    const double lam = coin(0.05) ? 1.0 : log_uniform(1.0, 1e3);
    return catcav::CavityParams::from_lambda(eta, coop, lam);
  }

  // Rate-level parameters with nontrivial kappa, gamma, gamma_rg.
  catcav::CavityParams cavity_rates() {
    const double eta = uniform(0.05, 1.0);
    const double coop = log_uniform(1e-2, 1e2);
    const double kappa = log_uniform(0.1, 10.0);
    const double gamma = log_uniform(0.1, 10.0);
    const double gamma_rg = log_uniform(0.01, 1.0);
    const double omega = log_uniform(0.01, 100.0);
    return catcav::CavityParams::from_rates(eta, coop, kappa, gamma, omega, gamma_rg);
  }

  catcav::DetuningSet detunings(double scale) {
    catcav::DetuningSet d;
    d.delta_c = uniform(-scale, scale);
    d.delta_s = uniform(-scale, scale);
    d.delta2_dn = catcav::TwoPhotonDetuning::finite(uniform(-scale, scale));
    if (coin(0.2)) d.delta2_up = catcav::TwoPhotonDetuning::finite(uniform(-scale, scale));
    return d;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
