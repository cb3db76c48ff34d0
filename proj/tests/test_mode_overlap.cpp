#include <cmath>
#include <numbers>

#include "catcav/bessel.hpp"
#include "catcav/errors.hpp"
#include "catcav/mode_overlap.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace catcav;

namespace {

AtomCloud random_cloud(gen::Rng& rng, int n, double spread) {
  AtomCloud c;
  c.k_in = {0.0, 0.0, 2.0 * std::numbers::pi / 0.78};
  for (int i = 0; i < n; ++i) c.positions.push_back({spread * rng.normal(), spread * rng.normal(), spread * rng.normal()});
  return c;
}

// Size of j_l near x: x^l / (2l+1)!! for small x, 1/x for large x.
double envelope(double x, int l) { return std::min(l == 0 ? 1.0 : x * x / 15.0, 1.0 / x); }

}  // namespace

TEST_CASE("spherical Bessel functions against extended precision") {
  CHECK(sph_j0(0.0) == 1.0);
  CHECK(sph_j2(0.0) == 0.0);
  for (double x = 1e-8; x <= 1e3; x *= 1.0137) {
    const double e0 = std::abs(sph_j0(x) - oracle::sph_j0_reference(x));
    const double e2 = std::abs(sph_j2(x) - oracle::sph_j2_reference(x));
    REQUIRE(e0 <= 1e-14 * envelope(x, 0));
    REQUIRE(e2 <= 1e-13 * envelope(x, 2));
  }
  CHECK(sph_j2(-2.5) == sph_j2(2.5));
  const double below = std::nextafter(kBesselSeriesCrossover, 0.0);
  CHECK(std::abs(sph_j2(below) - sph_j2(kBesselSeriesCrossover)) < 1e-15);
}

TEST_CASE("polarization") {
  CHECK_THROWS_AS(Polarization::normalized({0.0, 0.0, 0.0}), ParameterError);
  const Polarization circ = Polarization::circular_left();
  CHECK(circ.self_product() < 1e-16);
  CHECK(circ.projection({0, 0, 1}) == 0.0);
  CHECK(circ.projection({1, 0, 0}) == doctest::Approx(std::sqrt(0.5)));
  const Polarization lin = Polarization::linear({3.0, 0.0, 4.0});
  CHECK(lin.self_product() == doctest::Approx(1.0));
  CHECK(lin.projection({0, 0, 1}) == doctest::Approx(0.8));
}

TEST_CASE("dipole overlap") {
  for (double p : {0.0, std::sqrt(0.5), 1.0}) {
    CHECK(dipole_overlap(0.0, p) == 1.0);
    for (double kx = 20.0; kx <= 50.0; kx += 0.1) REQUIRE(std::abs(dipole_overlap(kx, p)) < 0.1);
  }
  const Polarization lin = Polarization::linear({1, 0, 0});
  const Complex q = oracle::solid_angle_overlap(5.0, {1, 0, 0}, lin.vector());
  CHECK(std::abs(q.real() - dipole_overlap(5.0, 1.0)) < 1e-8);
  CHECK(std::abs(q.imag()) < 1e-8);
  const Complex q0 = oracle::solid_angle_overlap(5.0, {0, 0, 1}, lin.vector());
  CHECK(std::abs(q0.real() - dipole_overlap(5.0, 0.0)) < 1e-8);
}

TEST_CASE("property: dipole overlap against angular quadrature") {
  gen::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const double kx = rng.uniform(0.0, 50.0);
    const Vec3 e = rng.unit_vector();
    const Polarization eps = Polarization::normalized(rng.complex_vector());
    const Complex q = oracle::solid_angle_overlap(kx, e, eps.vector());
    REQUIRE(std::abs(q.real() - dipole_overlap(kx, eps.projection(e))) < 1e-6);
    REQUIRE(std::abs(q.imag()) < 1e-6);
  }
}

TEST_CASE("property: pair overlaps are Hermitian and bounded") {
  gen::Rng rng(42);
  const Vec3 k{0.0, 0.0, 8.0};
  for (int i = 0; i < gen::kCases; ++i) {
    const Vec3 a{rng.normal(), rng.normal(), rng.normal()};
    const Vec3 b{rng.normal(), rng.normal(), rng.normal()};
    const Polarization eps = Polarization::normalized(rng.complex_vector());
    const Complex sab = pair_overlap(a, b, k, eps);
    REQUIRE(std::abs(sab - std::conj(pair_overlap(b, a, k, eps))) < 1e-15);
    REQUIRE(std::abs(sab) <= 1.0 + 1e-12);
    REQUIRE(pair_overlap(a, a, k, eps) == Complex(1.0, 0.0));
  }
  CHECK_THROWS_AS(pair_overlap({0, 0, 0}, {1, 0, 0}, {0, 0, 0}, Polarization::circular_left()),
                  ParameterError);
}

TEST_CASE("overlap matrix") {
  gen::Rng rng(43);
  const AtomCloud cloud = random_cloud(rng, 40, 1.5);
  const OverlapMatrix s(cloud, Polarization::circular_left());
  CHECK(s.size() == 40);
  CHECK(s.hermiticity_defect() == 0.0);
  CHECK_THROWS_AS(OverlapMatrix(3, std::vector<Complex>(8)), ParameterError);
}

TEST_CASE("collective overlap limiting cases") {
  gen::Rng rng(44);
  const Polarization eps = Polarization::circular_left();
  for (int i = 0; i < gen::kCases; ++i) {
    const CollectiveOverlap two = collective_overlap(random_cloud(rng, 2, rng.log_uniform(0.01, 10.0)), eps);
    REQUIRE(std::abs(two.c_up_dn - 1.0) < 1e-12);
  }
  for (int n : {2, 3, 10, 100}) {
    AtomCloud same;
    same.k_in = {0, 0, 8};
    same.positions.assign(n, Vec3{0.3, -0.2, 0.1});
    CHECK(std::abs(collective_overlap(same, eps).c_up_dn - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(collective_overlap(OverlapMatrix(1, {1.0})), ParameterError);
  CHECK_THROWS_AS(collective_overlap(OverlapMatrix(2, {1.0, -1.0, -1.0, 1.0})), NumericalError);
}

TEST_CASE("collective overlap against explicit far-field modes") {
  gen::Rng rng(45);
  for (int trial = 0; trial < 3; ++trial) {
    const AtomCloud cloud = random_cloud(rng, 5, 0.6);
    for (const Polarization& eps : {Polarization::circular_left(), Polarization::linear({1, 0, 0})}) {
      const CollectiveOverlap co = collective_overlap(cloud, eps, true);
      const Complex brute = oracle::brute_force_collective(cloud, eps.vector(), 200, 200);
      CHECK(std::abs(co.c_up_dn - brute) < 1e-8);
      CHECK(co.per_atom.size() == 5);
      CHECK(std::abs(co.b_up_dn - (1.0 - co.c_up_dn.real())) < 1e-15);
      CHECK(mode_loss_input(co) == co.b_up_dn);
    }
  }
}

TEST_CASE("property: the collective overlap is a contraction") {
  gen::Rng rng(46);
  for (int i = 0; i < gen::kCases; ++i) {
    const int n = rng.integer(3, 12);
    const Polarization eps = Polarization::normalized(rng.complex_vector());
    const CollectiveOverlap co = collective_overlap(random_cloud(rng, n, rng.log_uniform(0.05, 5.0)), eps);
    REQUIRE(std::abs(co.c_up_dn) <= 1.0 + 1e-12);
    REQUIRE(co.b_up_dn >= -1e-12);
  }
}

TEST_CASE("coherent states in overlapping modes") {
  const LemmaCheck same = fock_overlap_lemma_check(1.0, 1.0, 1.0, 30);
  CHECK(std::abs(same.brute_force - 1.0) < 1e-10);
  const LemmaCheck orth = fock_overlap_lemma_check(0.0, 1.0, Complex(0, 1), 30);
  CHECK(std::abs(orth.closed_form - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(orth.brute_force - orth.closed_form) < 1e-10);
  CHECK_THROWS_AS(fock_overlap_lemma_check(1.5, 1.0, 1.0, 30), ParameterError);
  CHECK_FALSE(fock_overlap_lemma_check(0.5, 3.0, 3.0, 5).cutoff_sufficient);

  gen::Rng rng(47);
  for (int i = 0; i < gen::kCases; ++i) {
    const Complex c = rng.complex_in_disk(1.0);
    const LemmaCheck l = fock_overlap_lemma_check(c, rng.complex_in_disk(1.5), rng.complex_in_disk(1.5), 30);
    REQUIRE(l.cutoff_sufficient);
    REQUIRE(std::abs(l.brute_force - l.closed_form) < 1e-10);
  }
}
