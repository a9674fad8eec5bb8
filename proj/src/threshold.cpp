#include "qng/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qng/detail/triangle_evaluator.hpp"
#include "qng/errors.hpp"
#include "qng/targets.hpp"

namespace qng {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// Gaussian searches stop once within this of the largest possible value.
constexpr double kReachTol = 1e-7;
constexpr int kLanczosSteps = 10;
constexpr std::size_t kRefinedCells = 6;

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> product_input(const InnerMax& im) {
  return {im.u.conjugate(), im.v};
}

// Maximizes f on [a, b] by golden-section search.
template <class F>
std::pair<double, double> golden(F&& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

template <class F>
void parallel_for(int count, int jobs, F&& body) {
  const int nthreads = std::min(std::max(jobs, 1), count);
  if (nthreads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  for (int t = 0; t < nthreads; ++t)
    threads.emplace_back([&, t] {
      for (int i = t; i < count; i += nthreads) body(i);
    });
  for (auto& th : threads) th.join();
}

struct GaussianRun {
  ThresholdResult result;
  Eigen::VectorXd best_z;
};

GaussianRun gaussian_run(const TwoModeState& target, int n, const CmaesConfig& opt, double xi_max,
                         const Eigen::VectorXd& z0) {
  const detail::TriangleEvaluator ev(target, n);
  const auto maps = entangling_maps(xi_max);
  CmaesConfig cfg = opt;
  cfg.dim = 6;
  if (!cfg.target) cfg.target = target.norm_squared() - kReachTol;
  const Objective f = [&](const Eigen::VectorXd& x) { return ev.value(entangling_from_vector(x)); };
  const OptRun run = maximize(f, cfg, maps, z0);

  GaussianRun out;
  out.best_z = run.best_z;
  ThresholdResult& r = out.result;
  r.kind = ThresholdKind::gaussian;
  const EntanglingParams p = entangling_from_vector(run.best_x);
  r.best_params = p;
  const InnerMax im = inner_max(ev.overlap(p));
  r.value = run.best_f;
  r.best_input = product_input(im);
  r.evaluations = run.evals;
  r.cutoff_trace.push_back({n, run.best_f, run.evals, run.restart_best, to_string(run.stop_reason)});
  return out;
}

}  // namespace

std::string to_string(ThresholdKind k) { return k == ThresholdKind::passive ? "passive" : "gaussian"; }

void GridConfig::validate() const {
  if (phi_steps < 2) throw InvalidConfig("grid.phi_steps: must be >= 2");
  if (theta_steps < 2) throw InvalidConfig("grid.theta_steps: must be >= 2");
  if (!(refine_tol > 0.0)) throw InvalidConfig("grid.refine_tol: must be > 0");
  if (jobs < 1) throw InvalidConfig("jobs: must be >= 1");
}

void EscalationConfig::validate() const {
  if (step < 1) throw InvalidConfig("escalation.step: must be >= 1");
  if (max_cutoff < 0) throw InvalidConfig("escalation.max_cutoff: must be >= 0");
  if (!(tol > 0.0)) throw InvalidConfig("escalation.tol: must be > 0");
  if (!(support_weight > 0.0 && support_weight < 1.0))
    throw InvalidConfig("escalation.support_weight: must be in (0, 1)");
}

Eigen::MatrixXcd overlap_matrix(const TwoModeState& target, const TwoModeOperator& u, int input_cutoff) {
  if (!(target.basis() == u.basis())) throw BasisMismatch("overlap_matrix: target and operator bases differ");
  if (input_cutoff < 0 || input_cutoff > u.basis().cutoff)
    throw BasisMismatch("overlap_matrix: input cutoff exceeds operator cutoff");
  const BasisDescriptor b = u.basis();
  // M(k, l) = sum_j conj(t_j) U(j, (k, l))
  const Eigen::RowVectorXcd row = target.amplitudes().adjoint() * u.matrix();
  Eigen::MatrixXcd m(input_cutoff + 1, input_cutoff + 1);
  for (int k = 0; k <= input_cutoff; ++k)
    for (int l = 0; l <= input_cutoff; ++l) m(k, l) = row(b.index(k, l));
  return m;
}

InnerMax inner_max(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  InnerMax out;
  const double s = svd.singularValues()(0);
  out.value = s * s;
  out.u = svd.matrixU().col(0);
  out.v = svd.matrixV().col(0);
  return out;
}

ThresholdResult passive_threshold(const TwoModeState& target, const GridConfig& grid) {
  grid.validate();
  if (target.leakage() > kMaxThresholdLeakage)
    throw LeakageTooLarge("target leakage " + std::to_string(target.leakage()) + " exceeds 1e-4");
  const int n = grid.input_cutoff < 0 ? target.basis().cutoff : grid.input_cutoff;
  const detail::TriangleEvaluator ev(target, n);

  // Grid: phi1 enters M as sum_k exp(i k phi1) parts_k(theta). Grid values are
  // Lanczos estimates; the best cells are then refined with exact values.
  struct Cell {
    double value = -1.0;
    int phi = 0;
    int theta = 0;
  };
  const int dim = n + 1;
  const int kmax = target.basis().cutoff;
  // phase(k, j) = exp(i k phi_j)
  Eigen::MatrixXcd phase(kmax + 1, grid.phi_steps);
  for (int k = 0; k <= kmax; ++k)
    for (int j = 0; j < grid.phi_steps; ++j) phase(k, j) = std::polar(1.0, k * kTwoPi * j / grid.phi_steps);
  std::vector<Cell> best_per_theta(grid.theta_steps);
  parallel_for(grid.theta_steps, grid.jobs, [&](int i) {
    const double theta = 0.5 * M_PI * i / (grid.theta_steps - 1);
    const std::vector<Eigen::MatrixXcd> parts = ev.passive_parts(theta);
    std::vector<int> used;
    for (int k = 0; k < static_cast<int>(parts.size()); ++k)
      if (parts[k].cwiseAbs2().sum() > 0.0) used.push_back(k);
    // Column j of all = vec(M(phi_j)).
    Eigen::MatrixXcd a(dim * dim, used.size()), e(used.size(), grid.phi_steps);
    for (std::size_t c = 0; c < used.size(); ++c) {
      a.col(c) = parts[used[c]].reshaped();
      e.row(c) = phase.row(used[c]);
    }
    const Eigen::MatrixXcd all = a * e;
    Cell best;
    best.theta = i;
    for (int j = 0; j < grid.phi_steps; ++j) {
      const Eigen::Map<const Eigen::MatrixXcd> m(all.col(j).data(), dim, dim);
      const double v = detail::top_singular_value_squared_estimate(m, kLanczosSteps);
      if (v > best.value) {
        best.value = v;
        best.phi = j;
      }
    }
    best_per_theta[i] = best;
  });
  std::vector<Cell> cells = best_per_theta;
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
  cells.resize(std::min<std::size_t>(cells.size(), kRefinedCells));

  long evals = static_cast<long>(grid.phi_steps) * grid.theta_steps;
  const double dphi = kTwoPi / grid.phi_steps, dtheta = 0.5 * M_PI / (grid.theta_steps - 1);
  PassiveParams p;
  double value = -1.0;
  for (const Cell& cell : cells) {
    PassiveParams q{dphi * cell.phi, dtheta * cell.theta};
    double v = ev.value(q);
    ++evals;
    // Coordinate-wise golden-section refinement within one grid cell.
    for (int sweep = 0; sweep < 50; ++sweep) {
      const double before = v;
      auto [phi, vphi] = golden(
          [&](double x) {
            ++evals;
            return ev.value(PassiveParams{x, q.theta});
          },
          q.phi1 - dphi, q.phi1 + dphi, grid.refine_tol);
      if (vphi > v) {
        v = vphi;
        q.phi1 = phi;
      }
      auto [theta, vtheta] = golden(
          [&](double x) {
            ++evals;
            return ev.value(PassiveParams{q.phi1, x});
          },
          q.theta - dtheta, q.theta + dtheta, grid.refine_tol);
      if (vtheta > v) {
        v = vtheta;
        q.theta = theta;
      }
      if (v - before < grid.refine_tol) break;
    }
    if (v > value) {
      value = v;
      p = q;
    }
  }

  ThresholdResult r;
  r.kind = ThresholdKind::passive;
  r.value = value;
  r.best_params = p;
  r.best_input = product_input(inner_max(ev.overlap(p)));
  r.cutoff_trace.push_back({n, value, evals, {}, "grid"});
  r.converged = true;
  r.evaluations = evals;
  return r;
}

std::vector<CoordinateMap> entangling_maps(double xi_max) {
  return {CoordinateMap::periodic(0.0, kTwoPi), CoordinateMap::periodic(0.0, kTwoPi),
          CoordinateMap::periodic(0.0, M_PI),   CoordinateMap::periodic(0.0, kTwoPi),
          CoordinateMap::cosine(0.0, xi_max),   CoordinateMap::periodic(0.0, M_PI)};
}

EntanglingParams entangling_from_vector(const Eigen::VectorXd& x) {
  if (x.size() != 6) throw InvalidConfig("entangling parameter vector must have 6 entries");
  return {x(0), x(1), x(2), x(3), x(4), x(5)};
}

CmaesConfig default_gaussian_optimizer() {
  CmaesConfig c;
  c.dim = 6;
  c.restarts = 11;
  return c;
}

ThresholdResult gaussian_threshold_at(const TwoModeState& target, int input_cutoff, const CmaesConfig& opt,
                                      double xi_max, const Eigen::VectorXd& z0) {
  return gaussian_run(target, input_cutoff, opt, xi_max, z0).result;
}

ThresholdResult gaussian_threshold(const TwoModeState& target, const CmaesConfig& opt, const EscalationConfig& esc,
                                   double xi_max) {
  esc.validate();
  if (target.leakage() > kMaxThresholdLeakage)
    throw LeakageTooLarge("target leakage " + std::to_string(target.leakage()) + " exceeds 1e-4");
  const int support = effective_support(target, esc.support_weight);
  const int start = esc.start_cutoff >= 0 ? esc.start_cutoff : std::max(support + 5, 15);
  if (start < support) throw CutoffTooSmall("escalation start cutoff is below the target support");

  ThresholdResult out;
  out.kind = ThresholdKind::gaussian;
  out.value = -1.0;
  out.converged = false;
  // At least two cutoffs so that convergence can be judged.
  const int last = std::max(esc.max_cutoff, start + esc.step);
  Eigen::VectorXd z0;
  for (int n = start;; n += esc.step) {
    // Target cropped to the input box; the error is bounded by the cropped weight,
    // which shrinks along the schedule.
    const TwoModeState t = n < target.basis().cutoff ? target.with_cutoff(n) : target;
    GaussianRun run = gaussian_run(t, n, opt, xi_max, z0);
    z0 = run.best_z;
    out.evaluations += run.result.evaluations;
    out.cutoff_trace.push_back(run.result.cutoff_trace.front());
    if (run.result.value > out.value) {
      out.value = run.result.value;
      out.best_params = run.result.best_params;
      out.best_input = run.result.best_input;
    }
    const auto& tr = out.cutoff_trace;
    if (tr.size() >= 2 && std::abs(tr.back().value - tr[tr.size() - 2].value) < esc.tol) {
      out.converged = true;
      break;
    }
    if (n + esc.step > last) break;
  }
  return out;
}

CertificationVerdict certify(double fidelity, const ThresholdResult& threshold) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ParameterOutOfRange("fidelity must be in [0, 1]");
  CertificationVerdict v;
  v.fidelity = fidelity;
  v.threshold = threshold;
  v.margin = fidelity - threshold.value;
  v.certified = v.margin > 0.0;
  return v;
}

}  // namespace qng
