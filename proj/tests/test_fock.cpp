#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qng/detail/chain_generator.hpp"
#include "qng/fock.hpp"

using namespace qng;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("basis indexing is a bijection") {
  BasisDescriptor b(4);
  CHECK(b.dim() == 5);
  std::vector<int> seen(b.size(), 0);
  for (int k = 0; k <= 4; ++k)
    for (int l = 0; l <= 4; ++l) {
      const int f = b.index(k, l);
      REQUIRE(f >= 0);
      REQUIRE(f < b.size());
      seen[f]++;
      CHECK(b.pair(f) == std::make_pair(k, l));
    }
  for (int s : seen) CHECK(s == 1);
  CHECK_THROWS_AS(BasisDescriptor(-1), ParameterOutOfRange);
}

TEST_CASE("chain generator exponential matches dense Pade exponential") {
  std::vector<double> c = {1.0, std::sqrt(2.0), 0.7, 2.5, 1.1};
  detail::ChainGenerator gen(c);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(6, 6);
  for (int j = 0; j < 5; ++j) {
    g(j + 1, j) = c[j];
    g(j, j + 1) = -c[j];
  }
  const double t = 0.83;
  Eigen::MatrixXd ref = (t * g).exp();
  CHECK((gen.exp_block(t, 0, 6, 0, 6) - ref).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((gen.exp_block(t, 2, 3, 1, 4) - ref.block(2, 1, 3, 4)).cwiseAbs().maxCoeff() < 1e-13);
  Eigen::VectorXcd x(3);
  x << cd(0.2, 0.1), cd(-0.5, 0.3), cd(1.0, 0.0);
  Eigen::VectorXcd y = gen.apply(t, x, 6);
  Eigen::VectorXcd yref = ref.leftCols(3).cast<cd>() * x;
  CHECK((y - yref).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("beam splitter") {
  const BasisDescriptor b(6);
  SUBCASE("tau = 0 is the identity") {
    auto u = beam_splitter(0.0, b);
    CHECK(max_abs(u.matrix() - Eigen::MatrixXcd::Identity(b.size(), b.size())) == 0.0);
  }
  SUBCASE("tau = pi/4 balances one photon") {
    auto out = apply(beam_splitter(M_PI / 4, b), TwoModeState::basis_state(b, 1, 0));
    CHECK(std::abs(out.amplitude(1, 0)) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(out.amplitude(0, 1)) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("tau = pi/2 swaps one photon") {
    auto out = apply(beam_splitter(M_PI / 2, b), TwoModeState::basis_state(b, 1, 0));
    CHECK(std::abs(out.amplitude(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(out.amplitude(1, 0)) < 1e-14);
  }
  SUBCASE("real tau matches the binomial mode-transformation formula") {
    const double t = 0.61;
    auto u = beam_splitter(t, b);
    double err = 0.0;
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; n <= 6; ++n)
        for (int k = 0; k <= 6; ++k)
          for (int l = 0; l <= 6; ++l)
            err = std::max(err, std::abs(u.element(m, n, k, l) -
                                         oracle::beam_splitter_element(t, m, n, k, l)));
    CHECK(err < 1e-12);
  }
  SUBCASE("complex tau matches the dense exponential") {
    const cd tau = std::polar(0.9, 1.3);
    auto u = beam_splitter(tau, b);
    Eigen::MatrixXcd ref = oracle::beam_splitter_expm(tau, 6);
    // Dense box exponential is exact on total-number blocks N <= cutoff.
    double err = 0.0;
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; m + n <= 6; ++n)
        for (int k = 0; k <= 6; ++k)
          for (int l = 0; k + l <= 6; ++l)
            err = std::max(err, std::abs(u.element(m, n, k, l) - ref(b.index(m, n), b.index(k, l))));
    CHECK(err < 1e-12);
  }
  SUBCASE("number conservation is exact and the defect is at rounding level") {
    auto u = beam_splitter(std::polar(1.1, -0.4), BasisDescriptor(12));
    const BasisDescriptor bb(12);
    for (int i = 0; i < bb.size(); ++i)
      for (int j = 0; j < bb.size(); ++j) {
        auto [m, n] = bb.pair(i);
        auto [k, l] = bb.pair(j);
        if (m + n != k + l) REQUIRE(u.matrix()(i, j) == cd(0.0));
      }
    CHECK(u.unitarity_defect() < 1e-12);
  }
}

TEST_CASE("phase shift") {
  const BasisDescriptor b(4);
  CHECK(max_abs(phase_shift(0.0, Mode::first, b).matrix() -
                Eigen::MatrixXcd::Identity(b.size(), b.size())) == 0.0);
  auto s = apply(phase_shift(M_PI, Mode::first, b), TwoModeState::basis_state(b, 1, 0));
  CHECK(std::abs(s.amplitude(1, 0) - cd(-1.0)) < 1e-15);
  s = apply(phase_shift(M_PI / 2, Mode::second, b), TwoModeState::basis_state(b, 0, 2));
  CHECK(std::abs(s.amplitude(0, 2) - cd(-1.0)) < 1e-15);
  CHECK(phase_shift(0.37, Mode::second, BasisDescriptor(20)).unitarity_defect() < 1e-12);
}

TEST_CASE("single-mode squeezing") {
  SUBCASE("xi = 0 is the identity") {
    const BasisDescriptor b(5);
    CHECK(max_abs(single_mode_squeeze(0.0, Mode::first, b).matrix() -
                  Eigen::MatrixXcd::Identity(b.size(), b.size())) == 0.0);
  }
  SUBCASE("squeezed vacuum amplitude ratio") {
    const BasisDescriptor b(25);
    for (double r : {0.1, 0.4, 0.8}) {
      auto s = apply(single_mode_squeeze(r, Mode::first, b), TwoModeState::basis_state(b, 0, 0));
      const cd ratio = s.amplitude(2, 0) / s.amplitude(0, 0);
      CHECK(std::abs(ratio - std::tanh(2 * r) / std::sqrt(2.0)) < 1e-10);
      CHECK(std::abs(s.amplitude(0, 0)) ==
            doctest::Approx(1 / std::sqrt(std::cosh(2 * r))).epsilon(1e-10));
    }
  }
  SUBCASE("matches a cutoff-200 dense exponential on the cutoff-25 box") {
    const cd xi = std::polar(0.5, 0.8);
    const BasisDescriptor b(25);
    auto u = single_mode_squeeze(xi, Mode::second, b);
    Eigen::MatrixXcd ref = oracle::squeeze_expm(xi, 200);
    double err = 0.0;
    for (int m = 0; m <= 25; ++m)
      for (int n = 0; n <= 25; ++n)
        err = std::max(err, std::abs(u.element(3, m, 3, n) - ref(m, n)));
    CHECK(err < 1e-8);
    CHECK(u.unitarity_defect() < 1e-6);
  }
  SUBCASE("Bogoliubov transformation on the interior block") {
    const double r = 0.35, ph = 0.9;
    const int c = 120;
    const BasisDescriptor b(c);
    // Mode-1 columns with mode 2 in vacuum.
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(b.size(), c + 1);
    for (int n = 0; n <= c; ++n) x(b.index(n, 0), n) = 1.0;
    const cd xi = std::polar(r, ph);
    detail::left_single_mode_squeeze(xi, Mode::first, c,
                                     detail::squeeze_padding(c, detail::single_mode_growth(r)), x);
    Eigen::MatrixXcd sm(c + 1, c + 1);
    for (int m = 0; m <= c; ++m) sm.row(m) = x.row(b.index(m, 0));
    const Eigen::MatrixXcd a = oracle::lowering(c);
    Eigen::MatrixXcd lhs = sm.adjoint() * a * sm;
    Eigen::MatrixXcd rhs = a * std::cosh(2 * r) + a.adjoint() * std::polar(std::sinh(2 * r), ph);
    CHECK((lhs - rhs).topLeftCorner(12, 12).cwiseAbs().maxCoeff() < 1e-8);
  }
  SUBCASE("out of range parameter") {
    CHECK_THROWS_AS(single_mode_squeeze(3.5, Mode::first, BasisDescriptor(5)), ParameterOutOfRange);
    CHECK_THROWS_AS(single_mode_squeeze(0.5, Mode::first, BasisDescriptor(5), 0.4), ParameterOutOfRange);
  }
}

TEST_CASE("two-mode squeezing") {
  SUBCASE("vacuum gives Schmidt amplitudes sech r tanh^n r") {
    const BasisDescriptor b(25);
    for (double r : {0.2, 0.7, 1.2}) {
      auto s = apply(two_mode_squeeze(r, b), TwoModeState::basis_state(b, 0, 0));
      double err = 0.0;
      for (int n = 0; n <= 25; ++n)
        err = std::max(err, std::abs(s.amplitude(n, n) - oracle::tmsv_amplitude(r, n)));
      CHECK(err < 1e-8);
    }
  }
  SUBCASE("difference conservation is exact") {
    const BasisDescriptor b(10);
    auto u = two_mode_squeeze(std::polar(0.6, 2.0), b);
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) {
        auto [m, n] = b.pair(i);
        auto [k, l] = b.pair(j);
        if (m - n != k - l) REQUIRE(u.matrix()(i, j) == cd(0.0));
      }
  }
  SUBCASE("matches a long-ladder Pade exponential") {
    const cd xi = std::polar(0.45, -0.7);
    const BasisDescriptor b(8);
    auto u = two_mode_squeeze(xi, b);
    std::vector<Eigen::MatrixXcd> ladders;
    for (int d = 0; d <= 8; ++d) ladders.push_back(oracle::two_mode_squeeze_ladder(xi, d));
    double err = 0.0;
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) {
        auto [m, n] = b.pair(i);
        auto [k, l] = b.pair(j);
        if (m - n != k - l) continue;
        err = std::max(err, std::abs(u.matrix()(i, j) -
                                     ladders[std::abs(k - l)](std::min(m, n), std::min(k, l))));
      }
    CHECK(err < 1e-9);
  }
  SUBCASE("defect bound at cutoff 25") {
    CHECK(two_mode_squeeze(0.7, BasisDescriptor(25)).unitarity_defect() < 1e-6);
  }
}

TEST_CASE("annihilation") {
  const BasisDescriptor b(4);
  auto s = annihilate(Mode::first, TwoModeState::basis_state(b, 1, 0));
  CHECK(std::abs(s.amplitude(0, 0) - cd(1.0)) < 1e-15);
  CHECK_THROWS_AS(annihilate(Mode::second, TwoModeState::basis_state(b, 0, 0)), ZeroState);
  s = annihilate(Mode::first, TwoModeState::basis_state(b, 2, 0));
  CHECK(std::abs(s.amplitude(1, 0) - cd(std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("apply, compose, inner") {
  const BasisDescriptor b(6);
  std::mt19937_64 rng(7);
  TwoModeState s(b, oracle::random_unit(b.size(), rng));
  auto id = TwoModeOperator::identity(b);
  CHECK((apply(id, s).amplitudes() - s.amplitudes()).norm() == 0.0);
  CHECK(std::abs(inner(s, s) - cd(1.0)) < 1e-14);
  auto u = beam_splitter(std::polar(0.4, 0.3), b);
  auto p = compose(u, u.adjoint());
  double err = 0.0;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      auto [m, n] = b.pair(i);
      auto [k, l] = b.pair(j);
      // Total-number blocks above the cutoff are compressed, hence not unitary.
      if (m + n > 6 || k + l > 6) continue;
      err = std::max(err, std::abs(p.matrix()(i, j) - (i == j ? 1.0 : 0.0)));
    }
  CHECK(err < 1e-12 + u.unitarity_defect());
  CHECK_THROWS_AS(apply(id, TwoModeState::basis_state(BasisDescriptor(3), 0, 0)), BasisMismatch);
  CHECK_THROWS_AS(compose(id, TwoModeOperator::identity(BasisDescriptor(2))), BasisMismatch);

  // Norm preserved within defect + leakage.
  const BasisDescriptor b25(25);
  auto sq = two_mode_squeeze(0.5, b25);
  auto in = TwoModeState::basis_state(b25, 2, 1);
  auto out = apply(sq, in);
  CHECK(std::abs(out.norm_squared() + out.leakage() - 1.0) < 1e-12);
  CHECK(out.leakage() < 1e-6);
}

TEST_CASE("state helpers") {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(3, 3);
  c(0, 1) = 0.6;
  c(2, 0) = cd(0, 0.8);
  auto s = TwoModeState::from_matrix(c);
  CHECK(s.swapped_modes().amplitude(1, 0) == cd(0.6));
  auto cropped = s.with_cutoff(1);
  CHECK(cropped.leakage() == doctest::Approx(0.64));
  CHECK(cropped.with_cutoff(3).amplitude(0, 1) == cd(0.6));
  auto n = TwoModeState(s.basis(), s.amplitudes() * 2.0).normalized();
  CHECK(n.norm_squared() == doctest::Approx(1.0));
}

TEST_CASE("generating-function overlaps") {
  CHECK(std::abs(overlap_generating_function(0, 0, 0, 0, 0.0, 0.0, 0.0, 0.0) - cd(1.0)) < 1e-15);
  const double r = 0.6;
  CHECK(std::abs(overlap_generating_function(0, 0, 1, 1, 0.0, 0.0, r, 0.0) -
                 cd(std::tanh(r) / std::cosh(r))) < 1e-14);

  // Random regression set against the padded matrix product.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int small = 4, big = 30;
  int bad = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const cd tau1 = std::polar(u(rng) * M_PI / 2, u(rng) * 2 * M_PI);
    const cd tau2 = std::polar(u(rng) * M_PI / 2, u(rng) * 2 * M_PI);
    const cd xi = std::polar(u(rng) * 0.6, u(rng) * 2 * M_PI);
    const double phi = u(rng) * 2 * M_PI;
    const int k = rng() % (small + 1), l = rng() % (small + 1);
    const int m = rng() % (small + 1), n = rng() % (small + 1);
    const BasisDescriptor bb(big);
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(bb.size(), 1);
    x(bb.index(k, l), 0) = 1.0;
    const int pad = detail::squeeze_padding(big, detail::two_mode_growth(std::abs(xi)));
    detail::left_beam_splitter(tau2, big, x);
    detail::left_two_mode_squeeze(xi, big, pad, x);
    detail::left_phase(phi, Mode::first, big, x);
    detail::left_beam_splitter(tau1, big, x);
    const cd ref = x(bb.index(m, n), 0);
    const double err = std::abs(ref - overlap_generating_function(k, l, m, n, tau1, tau2, xi, phi));
    worst = std::max(worst, err);
    if (err > 1e-8) ++bad;
  }
  CHECK(bad == 0);
  MESSAGE("worst generating-function deviation " << worst);
}
