#include <doctest.h>

#include <cmath>
#include <limits>

#include "qng/cmaes.hpp"
#include "qng/errors.hpp"

using namespace qng;

namespace {

std::vector<CoordinateMap> identity_maps(int n) { return std::vector<CoordinateMap>(n, CoordinateMap::identity()); }

double neg_sphere(const Eigen::VectorXd& x) { return -x.squaredNorm(); }

double neg_rosenbrock(const Eigen::VectorXd& x) {
  const double a = 1.0 - x(0), b = x(1) - x(0) * x(0);
  return -(a * a + 100.0 * b * b);
}

}  // namespace

TEST_CASE("sphere in four dimensions") {
  CmaesConfig cfg;
  cfg.dim = 4;
  cfg.tol_fun = 1e-14;
  cfg.tol_x = 1e-12;
  Eigen::VectorXd z0 = Eigen::VectorXd::Constant(4, 0.8);
  const OptRun run = maximize(neg_sphere, cfg, identity_maps(4), z0);
  CHECK(run.best_f >= -1e-10);
  CHECK(run.best_f == neg_sphere(run.best_x));
}

TEST_CASE("rosenbrock in two dimensions") {
  CmaesConfig cfg;
  cfg.dim = 2;
  cfg.sigma0 = 0.5;
  cfg.tol_fun = 1e-16;
  cfg.tol_x = 1e-12;
  cfg.stagnation_tol = 1e-14;
  const OptRun run = maximize(neg_rosenbrock, cfg, identity_maps(2), Eigen::Vector2d(-1.2, 1.0));
  CHECK(std::abs(run.best_x(0) - 1.0) < 1e-3);
  CHECK(std::abs(run.best_x(1) - 1.0) < 1e-3);
}

TEST_CASE("fixed seed gives identical runs") {
  CmaesConfig cfg;
  cfg.dim = 3;
  cfg.seed = 1234;
  cfg.restarts = 2;
  auto f = [](const Eigen::VectorXd& x) { return std::cos(3 * x(0)) * std::sin(2 * x(1)) - 0.1 * x.squaredNorm(); };
  const OptRun a = maximize(f, cfg, identity_maps(3));
  cfg.jobs = 4;
  const OptRun b = maximize(f, cfg, identity_maps(3));
  CHECK(a.best_f == b.best_f);
  CHECK(a.evals == b.evals);
  CHECK(a.best_x == b.best_x);
  CHECK(a.best_trace == b.best_trace);
  cfg.seed = 99;
  const OptRun c = maximize(f, cfg, identity_maps(3));
  CHECK(c.best_trace != a.best_trace);
}

TEST_CASE("best-ever trace is monotone and matches best_f") {
  CmaesConfig cfg;
  cfg.dim = 5;
  cfg.restarts = 3;
  auto f = [](const Eigen::VectorXd& x) {
    double s = 0;
    for (int i = 0; i < x.size(); ++i) s += std::cos(2 * M_PI * x(i)) - x(i) * x(i);
    return s;
  };
  const OptRun run = maximize(f, cfg, identity_maps(5));
  REQUIRE(!run.best_trace.empty());
  for (std::size_t i = 1; i < run.best_trace.size(); ++i) CHECK(run.best_trace[i] >= run.best_trace[i - 1]);
  CHECK(run.best_trace.back() <= run.best_f);
  CHECK(run.restart_best.size() == 4);
}

TEST_CASE("sphere up to dimension eight: success rate over 100 seeds") {
  for (int dim : {2, 5, 8}) {
    int ok = 0;
    for (int s = 0; s < 100; ++s) {
      CmaesConfig cfg;
      cfg.dim = dim;
      cfg.seed = 1000 + s;
      cfg.max_evals = 4000;
      cfg.tol_fun = 1e-20;
      cfg.tol_x = 1e-20;
      cfg.stagnation_tol = 0;
      cfg.target = -1e-8;
      const OptRun run = maximize(neg_sphere, cfg, identity_maps(dim), Eigen::VectorXd::Constant(dim, 0.5));
      if (run.best_f >= -1e-8 && run.evals <= 4000) ++ok;
    }
    INFO("dim " << dim);
    CHECK(ok >= 95);
  }
}

TEST_CASE("target stop") {
  CmaesConfig cfg;
  cfg.dim = 3;
  cfg.target = -1e-2;
  const OptRun run = maximize(neg_sphere, cfg, identity_maps(3), Eigen::VectorXd::Constant(3, 1.0));
  CHECK(run.stop_reason == StopReason::target_reached);
  CHECK(run.best_f >= -1e-2);
}

TEST_CASE("coordinate maps") {
  const auto p = CoordinateMap::periodic(0.0, 2 * M_PI);
  CHECK(p(-0.5) == doctest::Approx(2 * M_PI - 0.5));
  CHECK(p(7.0) == doctest::Approx(7.0 - 2 * M_PI));
  const auto c = CoordinateMap::cosine(0.0, 3.0);
  CHECK(c(0.0) == 0.0);
  CHECK(c(M_PI) == doctest::Approx(3.0));
  CHECK(c(-M_PI / 2) == doctest::Approx(1.5));
  for (double x = -20; x < 20; x += 0.37) {
    CHECK(c(x) >= 0.0);
    CHECK(c(x) <= 3.0);
  }
}

TEST_CASE("non-finite objective and bad configs") {
  CmaesConfig cfg;
  cfg.dim = 2;
  auto bad = [](const Eigen::VectorXd& x) {
    return x(0) > 0.2 ? std::numeric_limits<double>::quiet_NaN() : -x.squaredNorm();
  };
  CHECK_THROWS_AS(maximize(bad, cfg, identity_maps(2), Eigen::Vector2d(0.0, 0.0)), ObjectiveNonFinite);
  cfg.population = 3;
  CHECK_THROWS_AS(maximize(neg_sphere, cfg, identity_maps(2)), InvalidConfig);
  cfg.population = 0;
  cfg.tol_fun = 0;
  CHECK_THROWS_AS(maximize(neg_sphere, cfg, identity_maps(2)), InvalidConfig);
  cfg.tol_fun = 1e-8;
  CHECK_THROWS_AS(maximize(neg_sphere, cfg, identity_maps(3)), InvalidConfig);
}

TEST_CASE("rng is reproducible and roughly standard normal") {
  Rng a(7), b(7);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal();
    CHECK_EQ(x, b.normal());
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.01);
}
