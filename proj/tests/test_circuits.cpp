#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qng/circuits.hpp"

using namespace qng;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Largest deviation over matrix elements with all indices <= lim.
double interior_diff(const TwoModeOperator& a, const TwoModeOperator& b, int lim) {
  double err = 0.0;
  for (int m = 0; m <= lim; ++m)
    for (int n = 0; n <= lim; ++n)
      for (int k = 0; k <= lim; ++k)
        for (int l = 0; l <= lim; ++l)
          err = std::max(err, std::abs(a.element(m, n, k, l) - b.element(m, n, k, l)));
  return err;
}

}  // namespace

TEST_CASE("entangling family") {
  const BasisDescriptor b(8);
  SUBCASE("all zero is the identity") {
    CHECK(max_abs(entangling_unitary({}, b).matrix() - Eigen::MatrixXcd::Identity(b.size(), b.size())) <
          1e-15);
  }
  SUBCASE("xi = 0 is number conserving") {
    EntanglingParams p{0.3, 1.2, 0.7, 2.1, 0.0, 1.1};
    auto u = entangling_unitary(p, b);
    for (int i = 0; i < b.size(); ++i)
      for (int j = 0; j < b.size(); ++j) {
        auto [m, n] = b.pair(i);
        auto [k, l] = b.pair(j);
        if (m + n != k + l) REQUIRE(u.matrix()(i, j) == cd(0.0));
      }
  }
  SUBCASE("xi = r on vacuum is the two-mode squeezed vacuum") {
    const BasisDescriptor b25(25);
    EntanglingParams p;
    p.xi = 0.6;
    auto s = apply(entangling_unitary(p, b25), TwoModeState::basis_state(b25, 0, 0));
    double err = 0.0;
    for (int n = 0; n <= 25; ++n) err = std::max(err, std::abs(s.amplitude(n, n) - oracle::tmsv_amplitude(0.6, n)));
    CHECK(err < 1e-8);
  }
  SUBCASE("xi = 0 reduces to passive factors") {
    EntanglingParams p{0.4, 0.0, 0.9, 0.0, 0.0, 0.0};
    CHECK(max_abs(entangling_unitary(p, b).matrix() - passive_unitary({0.4, 0.9}, b).matrix()) < 1e-14);
    EntanglingParams q{0.4, 1.3, 0.9, 2.2, 0.0, 0.35};
    auto ref = compose(phase_shift(0.4, Mode::first, b),
                       compose(phase_shift(1.3, Mode::second, b),
                               compose(beam_splitter(0.9, b),
                                       compose(phase_shift(2.2, Mode::first, b), beam_splitter(0.35, b)))));
    CHECK(max_abs(entangling_unitary(q, b).matrix() - ref.matrix()) < 1e-12);
  }
  SUBCASE("matches the product of library factors on interior elements") {
    EntanglingParams p{0.4, 1.3, 0.9, 2.2, 0.3, 0.35};
    const BasisDescriptor b20(20);
    auto ref = compose(phase_shift(0.4, Mode::first, b20),
                       compose(phase_shift(1.3, Mode::second, b20),
                               compose(beam_splitter(0.9, b20),
                                       compose(phase_shift(2.2, Mode::first, b20),
                                               compose(two_mode_squeeze(0.3, b20), beam_splitter(0.35, b20))))));
    CHECK(interior_diff(entangling_unitary(p, b20), ref, 4) < 1e-8);
  }
  SUBCASE("parameter validation") {
    EntanglingParams p;
    p.xi = -0.1;
    CHECK_THROWS_AS(entangling_unitary(p, b), ParameterOutOfRange);
    p.xi = NAN;
    CHECK_THROWS_AS(entangling_unitary(p, b), ParameterOutOfRange);
  }
}

TEST_CASE("passive family") {
  const BasisDescriptor b(6);
  CHECK(max_abs(passive_unitary({0.0, 0.0}, b).matrix() - Eigen::MatrixXcd::Identity(b.size(), b.size())) == 0.0);
  auto s = apply(passive_unitary({0.0, M_PI / 4}, b), TwoModeState::basis_state(b, 1, 0));
  CHECK(std::abs(s.amplitude(1, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(s.amplitude(0, 1)) == doctest::Approx(1 / std::sqrt(2.0)));
  auto u = passive_unitary({1.7, 0.6}, b);
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      auto [m, n] = b.pair(i);
      auto [k, l] = b.pair(j);
      if (m + n != k + l) REQUIRE(u.matrix()(i, j) == cd(0.0));
    }
  CHECK(u.unitarity_defect() < 1e-12);
}

TEST_CASE("Bloch-Messiah family") {
  const BasisDescriptor b(20);
  SUBCASE("all zero is the identity") {
    CHECK(max_abs(bloch_messiah_unitary({}, BasisDescriptor(5)).matrix() - Eigen::MatrixXcd::Identity(36, 36)) <
          1e-15);
  }
  SUBCASE("opposite squeezers are a direct product") {
    BlochMessiahParams p;
    p.xi1 = 0.25;
    p.xi2 = -0.25;
    auto ref = compose(single_mode_squeeze(0.25, Mode::first, b), single_mode_squeeze(-0.25, Mode::second, b));
    CHECK(interior_diff(bloch_messiah_unitary(p, b), ref, 5) < 1e-10);
  }
  SUBCASE("balanced beam splitters turn opposite squeezers into two-mode squeezing") {
    BlochMessiahParams p;
    p.tau1 = -M_PI / 4;
    p.tau2 = M_PI / 4;
    p.xi1 = 0.2;
    p.xi2 = -0.2;
    EntanglingParams q;
    q.xi = 0.4;
    CHECK(interior_diff(bloch_messiah_unitary(p, b), entangling_unitary(q, b), 5) < 1e-9);
  }
  SUBCASE("state application agrees with the operator") {
    BlochMessiahParams p{cd(0.3, 0.1), cd(-0.2, 0.5), std::polar(0.3, 1.0), std::polar(0.2, -2.0)};
    const BasisDescriptor b12(12);
    auto in = TwoModeState::basis_state(b12, 1, 2);
    auto a = apply(bloch_messiah_unitary(p, b12), in);
    auto c = apply_bloch_messiah(p, in);
    CHECK((a.amplitudes() - c.amplitudes()).norm() < 1e-12);
    EntanglingParams e{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    auto a2 = apply(entangling_unitary(e, b12), in);
    auto c2 = apply_entangling(e, in);
    CHECK((a2.amplitudes() - c2.amplitudes()).norm() < 1e-12);
  }
}
