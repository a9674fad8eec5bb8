#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qng/circuits.hpp"
#include "qng/targets.hpp"

using namespace qng;

namespace {

double fidelity(const TwoModeState& a, const TwoModeState& b) { return std::norm(inner(a, b)); }

// Core amplitudes of two subtractions from the Bogoliubov relation
// S^dag a S = cosh(2 xi) a + sinh(2 xi) a^dag, evaluated on the vacuum by hand.
Eigen::MatrixXcd two_subtraction_core(double phi1, double phi2, double xi1, double xi2) {
  const double c1 = std::cosh(2 * xi1), s1 = std::sinh(2 * xi1);
  const double c2 = std::cosh(2 * xi2), s2 = std::sinh(2 * xi2);
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(3, 3);
  c(0, 0) = std::cos(phi1) * std::cos(phi2) * c1 * s1 + std::sin(phi1) * std::sin(phi2) * c2 * s2;
  c(1, 1) = s1 * s2 * std::sin(phi1 + phi2);
  c(2, 0) = std::sqrt(2.0) * std::cos(phi1) * std::cos(phi2) * s1 * s1;
  c(0, 2) = std::sqrt(2.0) * std::sin(phi1) * std::sin(phi2) * s2 * s2;
  return c / c.norm();
}

}  // namespace

TEST_CASE("Fock-pair and NOON-like states") {
  const BasisDescriptor b(4);
  CHECK(std::abs(fock_pair(0.0, 1, b).amplitude(0, 0) - cd(1.0)) < 1e-15);
  CHECK(std::abs(fock_pair(M_PI / 2, 1, b).amplitude(1, 1) - cd(1.0)) < 1e-15);
  auto s = fock_pair(M_PI / 4, 2, b);
  CHECK(s.amplitude(0, 0).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s.amplitude(2, 2).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK_THROWS_AS(fock_pair(0.3, 5, b), CutoffTooSmall);

  auto hom = noon_like(M_PI / 4, 1, b);
  CHECK(hom.amplitude(2, 0).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(hom.amplitude(0, 2).real() == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(noon_like(0.0, 2, b).amplitude(0, 4) - cd(1.0)) < 1e-15);
  auto t = noon_like(M_PI / 3, 1, b);
  CHECK(t.amplitude(0, 2).real() == doctest::Approx(0.5));
  CHECK(t.amplitude(2, 0).real() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK_THROWS_AS(noon_like(0.3, 3, b), CutoffTooSmall);
}

TEST_CASE("cat states") {
  auto c0 = cat_state(0.0, 1, 15);
  CHECK(c0.amplitudes(0) == 1.0);
  auto c1 = cat_state(0.0, -1, 15);
  CHECK(c1.degenerate);
  CHECK(c1.amplitudes(1) == 1.0);
  auto small = cat_state(1e-5, -1, 15);
  CHECK(small.amplitudes(1) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(small.degenerate);
  auto even = cat_state(1.0, 1, 30);
  CHECK(even.amplitudes(2) / even.amplitudes(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(even.amplitudes(1) == 0.0);
  CHECK(even.amplitudes.squaredNorm() + even.tail == doctest::Approx(1.0).epsilon(1e-12));
  const int c = cat_auto_cutoff(2.5);
  CHECK(c >= kMinCatCutoff);
  CHECK(cat_state(2.5, 1, c).tail < kCatTail);
  CHECK(cat_state(2.5, 1, c - 1).tail >= kCatTail * 0.0);
}

TEST_CASE("hybrid states") {
  const BasisDescriptor b(20);
  auto h1 = hybrid(1, 0.6, 1e-4, b);
  auto fp = fock_pair(0.6, 1, b);
  CHECK(fidelity(h1, fp) >= 1 - 1e-4);
  auto h2 = hybrid(2, 0.6, 1e-6, b);
  CHECK(std::abs(h2.amplitude(0, 1)) == doctest::Approx(std::cos(0.6)).epsilon(1e-9));
  CHECK(std::abs(h2.amplitude(1, 0)) == doctest::Approx(std::sin(0.6)).epsilon(1e-9));
  auto h0 = hybrid(1, 0.0, 1.2, b);
  auto cat = cat_state(1.2, 1, 20);
  for (int l = 0; l <= 20; ++l) CHECK(h0.amplitude(0, l).real() == doctest::Approx(cat.amplitudes(l)));
  CHECK(h0.norm_squared() + h0.leakage() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hybrid(1, 0.5, 2.5, BasisDescriptor(6)), CutoffTooSmall);
}

TEST_CASE("photon-subtracted states") {
  const BasisDescriptor b(25);
  SUBCASE("single subtraction at pi/4 is a squeezed antisymmetric photon") {
    const double r = 0.3;
    auto s = photon_subtracted(1, {M_PI / 4}, r, b);
    auto core = core_state(1, {M_PI / 4}, r);
    CHECK(core.amplitude(1, 0).real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(core.amplitude(0, 1).real() == doctest::Approx(-1 / std::sqrt(2.0)));
    const auto [xi1, xi2] = squeezing_generators(r);
    BlochMessiahParams p;
    p.xi1 = xi1;
    p.xi2 = xi2;
    auto rebuilt = apply_bloch_messiah(p, core.with_cutoff(25));
    CHECK(fidelity(rebuilt, s) >= 1 - 1e-9);
  }
  SUBCASE("phi = 0 gives the |1,0> core") {
    auto core = core_state(1, {0.0}, 0.4);
    CHECK(std::abs(core.amplitude(1, 0)) == doctest::Approx(1.0));
  }
  SUBCASE("two subtractions match the hand-derived core") {
    for (auto phis : {std::vector<double>{M_PI / 4, M_PI / 4}, std::vector<double>{M_PI / 4, -M_PI / 4},
                      std::vector<double>{0.3, 1.1}}) {
      const double r = 0.2;
      const auto [xi1, xi2] = squeezing_generators(r);
      auto core = core_state(2, phis, r);
      auto ref = two_subtraction_core(phis[0], phis[1], xi1, xi2);
      double err = 0.0;
      for (int k = 0; k <= 2; ++k)
        for (int l = 0; l <= 2; ++l) err = std::max(err, std::abs(core.amplitude(k, l) - ref(k, l)));
      CHECK(err < 1e-12);
      BlochMessiahParams p;
      p.xi1 = xi1;
      p.xi2 = xi2;
      auto rebuilt = apply_bloch_messiah(p, core.with_cutoff(25));
      CHECK(fidelity(rebuilt, photon_subtracted(2, phis, r, b)) >= 1 - 1e-8);
    }
  }
  SUBCASE("orthogonal double subtraction keeps even parity") {
    auto s = photon_subtracted(2, {M_PI / 4, -M_PI / 4}, 0.5, b);
    double odd = 0.0;
    for (int k = 0; k <= 25; ++k)
      for (int l = 0; l <= 25; ++l)
        if ((k + l) % 2 == 1) odd += std::norm(s.amplitude(k, l));
    CHECK(odd < 1e-20);
    // each mode keeps its own parity: a1^2 - a2^2 up to normalization
    double mixed = 0.0;
    for (int k = 1; k <= 25; k += 2)
      for (int l = 1; l <= 25; l += 2) mixed += std::norm(s.amplitude(k, l));
    CHECK(mixed < 1e-20);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(photon_subtracted(1, {0.3}, 0.0, b), ZeroState);
    CHECK_THROWS_AS(photon_subtracted(3, {0.1, 0.2, 0.3}, 0.2, b), ParameterOutOfRange);
    CHECK_THROWS_AS(photon_subtracted(2, {0.1}, 0.2, b), ParameterOutOfRange);
  }
}

TEST_CASE("automatic cutoffs meet the leakage budget") {
  std::vector<TargetSpec> specs;
  TargetSpec s;
  s.family = TargetFamily::fock_pair;
  s.theta = 0.4;
  s.n = 2;
  specs.push_back(s);
  s.family = TargetFamily::noon_like;
  specs.push_back(s);
  s.family = TargetFamily::hybrid1;
  s.alpha = 1.5;
  specs.push_back(s);
  s.family = TargetFamily::hybrid2;
  specs.push_back(s);
  s.family = TargetFamily::photon_subtracted;
  s.m = 1;
  s.phis = {M_PI / 4};
  s.r = 0.7;
  specs.push_back(s);
  s.m = 2;
  s.phis = {M_PI / 4, -M_PI / 4};
  specs.push_back(s);
  for (const auto& spec : specs) {
    auto t = make_target(spec);
    CHECK(t.leakage() <= kTargetLeakage);
    CHECK(std::abs(t.norm_squared() + t.leakage() - 1.0) <= 1e-9);
  }
  CHECK(family_from_string("noon_like") == TargetFamily::noon_like);
  CHECK_THROWS_AS(family_from_string("famly"), InvalidConfig);
}
