#include <cmath>
#include <string>

#include "catcav/errors.hpp"
#include "catcav/quantum_steady.hpp"
#include "doctest.h"
#include "generators.hpp"

using namespace catcav;

namespace {
const CavityParams kReference = CavityParams::from_lambda(0.9825, 21.0, 21.0);
}

TEST_CASE("resonant steady state matches the closed form") {
  for (QubitBranch b : {QubitBranch::Up, QubitBranch::Dn}) {
    const OutputAmplitudes q = steady_state_amplitudes(kReference, DetuningSet::resonant(), b, 1.0);
    const OutputAmplitudes c = output_amplitudes(kReference, b, 1.0);
    CHECK(std::abs(q.r - c.r) < 1e-12);
    CHECK(std::abs(q.m - c.m) < 1e-12);
    CHECK(std::abs(q.a - std::abs(c.a)) < 1e-12);
  }
  CHECK(steady_state_amplitudes(kReference, DetuningSet::resonant(), QubitBranch::Up, 1.0).a.real() ==
        doctest::Approx(2.0 * std::sqrt(0.9825 * 21.0) / 22.0).epsilon(1e-12));
}

TEST_CASE("property: steady state against the reflection coefficient") {
  gen::Rng rng(31);
  for (int i = 0; i < gen::kCases; ++i) {
    const CavityParams p = rng.cavity_rates();
    const DetuningSet det = rng.detunings(rng.log_uniform(0.01, 10.0));
    const Complex alpha = rng.complex_in_disk(3.0) + 0.05;
    for (QubitBranch b : {QubitBranch::Up, QubitBranch::Dn}) {
      const SteadyState ss = solve_steady_state(p, det, b, alpha);
      REQUIRE(ss.max_residual < 1e-12);
      const Complex r = reflection_coefficient(p, det, b) * alpha;
      REQUIRE(std::abs(ss.e_out - r) < 1e-12 * std::abs(alpha));
      const OutputAmplitudes closed = detuned_output_amplitudes(p, det, b, alpha);
      REQUIRE(std::abs(ss.e_m - closed.m) < 1e-12 * std::abs(alpha));
      REQUIRE(std::abs(spontaneous_amplitude(ss) - std::abs(closed.a)) < 1e-7 * std::abs(alpha));
    }
  }
}

TEST_CASE("empty cavity is a Lorentzian") {
  gen::Rng rng(32);
  for (int i = 0; i < gen::kCases; ++i) {
    const double eta = rng.uniform(0.05, 1.0);
    const double kappa = rng.log_uniform(0.1, 10.0);
    const auto p = CavityParams::from_rates(eta, 0.0, kappa, 1.0, 1.0, 1.0);
    DetuningSet det;
    det.delta_c = rng.uniform(-20.0, 20.0);
    const OutputAmplitudes q = steady_state_amplitudes(p, det, QubitBranch::Dn, 1.0);
    const double lorentz =
        1.0 - 4.0 * eta * (1.0 - eta) * kappa * kappa / (kappa * kappa + det.delta_c * det.delta_c);
    REQUIRE(std::norm(q.r) == doctest::Approx(lorentz).epsilon(1e-12).scale(1e-300));
    REQUIRE(q.a.real() < 1e-7);
  }
}

TEST_CASE("property: the response is linear in the drive") {
  gen::Rng rng(33);
  for (int i = 0; i < gen::kCases; ++i) {
    const CavityParams p = rng.cavity_rates();
    const DetuningSet det = rng.detunings(1.0);
    const Complex a1 = rng.complex_in_disk(2.0);
    const Complex a2 = rng.complex_in_disk(2.0);
    const QubitBranch b = rng.coin() ? QubitBranch::Up : QubitBranch::Dn;
    const SteadyState s1 = solve_steady_state(p, det, b, a1);
    const SteadyState s2 = solve_steady_state(p, det, b, a2);
    const SteadyState s12 = solve_steady_state(p, det, b, a1 + a2);
    REQUIRE(std::abs(s12.e_cav - s1.e_cav - s2.e_cav) < 1e-12 * (1.0 + std::abs(s12.e_cav)));
    REQUIRE(std::abs(s12.p - s1.p - s2.p) < 1e-12 * (1.0 + std::abs(s12.p)));
    REQUIRE(std::abs(s12.s - s1.s - s2.s) < 1e-12 * (1.0 + std::abs(s12.s)));
  }
}

TEST_CASE("blockade pins the spin wave") {
  const SteadyState ss = solve_steady_state(kReference, DetuningSet::resonant(), QubitBranch::Up, 1.0);
  CHECK(ss.s == Complex(0.0, 0.0));
  const OutputAmplitudes zero = steady_state_amplitudes(kReference, DetuningSet::resonant(), QubitBranch::Dn, 0.0);
  CHECK(zero.r == Complex(0.0, 0.0));
  CHECK(zero.a == Complex(0.0, 0.0));
}

TEST_CASE("singular system names the vanishing denominator") {
  detail::Matrix3 a{};
  a[0] = {1.0, 0.0, 0.0};
  a[1] = {0.0, 0.0, 0.0};
  a[2] = {0.0, 0.0, 1.0};
  try {
    detail::solve3(a, {1.0, 1.0, 1.0}, {"first", "second", "third"});
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("second") != std::string::npos);
  }
  CHECK_THROWS_AS(detail::solve3(detail::Matrix3{}, {1.0, 0.0, 0.0}, {"a", "b", "c"}), NumericalError);

  detail::Matrix3 m{};
  m[0] = {0.0, 2.0, 0.0};
  m[1] = {3.0, 0.0, 0.0};
  m[2] = {0.0, 1.0, 4.0};
  const auto x = detail::solve3(m, {2.0, 6.0, 9.0}, {"a", "b", "c"});
  CHECK(std::abs(x[0] - 2.0) < 1e-15);
  CHECK(std::abs(x[1] - 1.0) < 1e-15);
  CHECK(std::abs(x[2] - 2.0) < 1e-15);
}
