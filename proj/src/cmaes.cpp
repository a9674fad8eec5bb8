#include "qng/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <Eigen/Eigenvalues>

#include "qng/errors.hpp"

namespace qng {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0, 1]
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * M_PI * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * M_PI * u2);
}

int CmaesConfig::lambda() const {
  if (population > 0) return population;
  return 4 + static_cast<int>(std::floor(3.0 * std::log(double(dim))));
}

void CmaesConfig::validate() const {
  if (dim < 1) throw InvalidConfig("optimizer.dim: must be >= 1");
  if (lambda() < 4) throw InvalidConfig("optimizer.population: must be >= 4");
  if (!(sigma0 > 0.0)) throw InvalidConfig("optimizer.sigma0: must be > 0");
  if (!(tol_fun > 0.0)) throw InvalidConfig("optimizer.tol_fun: must be > 0");
  if (!(tol_x > 0.0)) throw InvalidConfig("optimizer.tol_x: must be > 0");
  if (max_evals < 1) throw InvalidConfig("optimizer.max_evals: must be >= 1");
  if (restarts < 0) throw InvalidConfig("optimizer.restarts: must be >= 0");
  if (jobs < 1) throw InvalidConfig("jobs: must be >= 1");
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::tol_fun: return "tol_fun";
    case StopReason::tol_x: return "tol_x";
    case StopReason::max_evals: return "max_evals";
    case StopReason::stagnation: return "stagnation";
    case StopReason::target_reached: return "target_reached";
  }
  return "unknown";
}

double CoordinateMap::operator()(double x) const {
  switch (kind) {
    case Kind::identity: return x;
    case Kind::periodic: {
      const double w = hi - lo;
      double y = std::fmod(x - lo, w);
      if (y < 0) y += w;
      return lo + y;
    }
    case Kind::cosine: return lo + (hi - lo) * 0.5 * (1.0 - std::cos(x));
  }
  return x;
}

std::pair<double, double> CoordinateMap::init_range() const {
  switch (kind) {
    case Kind::identity: return {-1.0, 1.0};
    case Kind::periodic: return {lo, hi};
    case Kind::cosine: return {0.0, M_PI};
  }
  return {0.0, 1.0};
}

namespace {

Eigen::VectorXd apply_maps(const std::vector<CoordinateMap>& maps, const Eigen::VectorXd& z) {
  Eigen::VectorXd x(z.size());
  for (int i = 0; i < z.size(); ++i) x(i) = maps[i](z(i));
  return x;
}

// Evaluates all columns of zs, in parallel when jobs > 1; results by index.
std::vector<double> evaluate(const Objective& f, const std::vector<CoordinateMap>& maps,
                             const std::vector<Eigen::VectorXd>& zs, int jobs) {
  std::vector<double> out(zs.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < zs.size(); i += stride) out[i] = f(apply_maps(maps, zs[i]));
  };
  const std::size_t nthreads = std::min<std::size_t>(std::max(jobs, 1), zs.size());
  if (nthreads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(work, t, nthreads);
    for (auto& t : threads) t.join();
  }
  for (double v : out)
    if (!std::isfinite(v)) throw ObjectiveNonFinite("objective returned a non-finite value");
  return out;
}

struct Run {
  Eigen::VectorXd best_z;
  double best_f = -std::numeric_limits<double>::infinity();
  long evals = 0;
  StopReason stop = StopReason::max_evals;
  std::vector<double> trace;
};

Run single_run(const Objective& f, const CmaesConfig& cfg, const std::vector<CoordinateMap>& maps,
               Eigen::VectorXd mean, Rng& rng) {
  const int n = cfg.dim;
  const int lambda = cfg.lambda();
  const int mu = lambda / 2;
  Eigen::VectorXd w(mu);
  for (int i = 0; i < mu; ++i) w(i) = std::log(mu + 0.5) - std::log(i + 1.0);
  w /= w.sum();
  const double mueff = 1.0 / w.squaredNorm();
  const double cs = (mueff + 2.0) / (n + mueff + 5.0);
  const double ds = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (n + 1.0)) - 1.0) + cs;
  const double cc = (4.0 + mueff / n) / (n + 4.0 + 2.0 * mueff / n);
  const double c1 = 2.0 / ((n + 1.3) * (n + 1.3) + mueff);
  const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((n + 2.0) * (n + 2.0) + mueff));
  const double chin = std::sqrt(double(n)) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

  Eigen::VectorXd ps = Eigen::VectorXd::Zero(n), pc = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd D = Eigen::VectorXd::Ones(n);
  double sigma = cfg.sigma0;

  Run run;
  {
    const double f0 = evaluate(f, maps, {mean}, 1)[0];
    run.evals = 1;
    run.best_f = f0;
    run.best_z = mean;
  }
  double last_improve_value = run.best_f;
  int generations_since_improve = 0;
  const int hist_len = 10 + static_cast<int>(std::ceil(30.0 * n / lambda));
  std::vector<double> hist;

  for (int gen = 0;; ++gen) {
    if (cfg.target && run.best_f >= *cfg.target) {
      run.stop = StopReason::target_reached;
      break;
    }
    if (run.evals + lambda > cfg.max_evals) {
      run.stop = StopReason::max_evals;
      break;
    }
    std::vector<Eigen::VectorXd> ys(lambda), zs(lambda);
    for (int k = 0; k < lambda; ++k) {
      Eigen::VectorXd g(n);
      for (int i = 0; i < n; ++i) g(i) = rng.normal();
      ys[k] = B * (D.asDiagonal() * g);
      zs[k] = mean + sigma * ys[k];
    }
    const std::vector<double> fv = evaluate(f, maps, zs, cfg.jobs);
    run.evals += lambda;
    std::vector<int> order(lambda);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] > fv[b]; });
    if (fv[order[0]] > run.best_f) {
      run.best_f = fv[order[0]];
      run.best_z = zs[order[0]];
    }
    run.trace.push_back(run.best_f);

    Eigen::VectorXd yw = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < mu; ++i) yw += w(i) * ys[order[i]];
    mean += sigma * yw;

    // C^{-1/2} y_w = B D^{-1} B^T y_w
    const Eigen::VectorXd cinv_yw = B * (B.transpose() * yw).cwiseQuotient(D);
    ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * cinv_yw;
    const double psn = ps.norm() / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * (gen + 1)));
    const double hs = psn < (1.4 + 2.0 / (n + 1.0)) * chin ? 1.0 : 0.0;
    pc = (1.0 - cc) * pc + hs * std::sqrt(cc * (2.0 - cc) * mueff) * yw;
    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < mu; ++i) rank_mu += w(i) * ys[order[i]] * ys[order[i]].transpose();
    C = (1.0 - c1 - cmu) * C + c1 * (pc * pc.transpose() + (1.0 - hs) * cc * (2.0 - cc) * C) + cmu * rank_mu;
    sigma *= std::exp((cs / ds) * (ps.norm() / chin - 1.0));

    C = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor = 1e-14 * C.trace();
    for (int i = 0; i < n; ++i) ev(i) = std::max(ev(i), floor);
    B = es.eigenvectors();
    D = ev.cwiseSqrt();
    C = B * ev.asDiagonal() * B.transpose();

    // Stops
    if (run.best_f > last_improve_value + cfg.stagnation_tol) {
      last_improve_value = run.best_f;
      generations_since_improve = 0;
    } else if (++generations_since_improve >= cfg.stagnation_generations) {
      run.stop = StopReason::stagnation;
      break;
    }
    hist.push_back(fv[order[0]]);
    if (static_cast<int>(hist.size()) > hist_len) hist.erase(hist.begin());
    if (static_cast<int>(hist.size()) == hist_len) {
      const auto [lo, hi] = std::minmax_element(hist.begin(), hist.end());
      const double spread = std::max(*hi - *lo, fv[order[0]] - fv[order[lambda - 1]]);
      if (spread < cfg.tol_fun) {
        run.stop = StopReason::tol_fun;
        break;
      }
    }
    if (sigma * D.maxCoeff() < cfg.tol_x && sigma * pc.cwiseAbs().maxCoeff() < cfg.tol_x) {
      run.stop = StopReason::tol_x;
      break;
    }
  }
  return run;
}

}  // namespace

OptRun maximize(const Objective& objective, const CmaesConfig& config,
                const std::vector<CoordinateMap>& maps, const Eigen::VectorXd& z0) {
  config.validate();
  if (static_cast<int>(maps.size()) != config.dim) throw InvalidConfig("optimizer: one map per dimension");
  if (z0.size() != 0 && z0.size() != config.dim) throw InvalidConfig("optimizer: initial mean has wrong size");
  OptRun out;
  for (int r = 0; r <= config.restarts; ++r) {
    // Independent stream per restart.
    Rng rng(config.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r));
    Eigen::VectorXd mean(config.dim);
    if (r == 0 && z0.size() == config.dim) {
      mean = z0;
    } else {
      for (int i = 0; i < config.dim; ++i) {
        const auto [lo, hi] = maps[i].init_range();
        mean(i) = lo + (hi - lo) * rng.uniform();
      }
    }
    Run run = single_run(objective, config, maps, mean, rng);
    out.evals += run.evals;
    out.restart_best.push_back(run.best_f);
    for (double v : run.trace) out.best_trace.push_back(std::max(v, out.best_f));
    if (run.best_f > out.best_f) {
      out.best_f = run.best_f;
      out.best_z = run.best_z;
      out.best_x = apply_maps(maps, run.best_z);
      out.restart = r;
      out.stop_reason = run.stop;
    }
    if (config.target && out.best_f >= *config.target) {
      out.stop_reason = StopReason::target_reached;
      break;
    }
  }
  return out;
}

}  // namespace qng
