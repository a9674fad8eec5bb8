#include "qng/loss.hpp"

#include <cmath>
#include <thread>

#include "qng/errors.hpp"

namespace qng {

namespace {

void check_inputs(const TwoModeState& state, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterOutOfRange("eta must be in [0, 1]");
  if (state.leakage() > kLossMaxLeakage)
    throw LeakageTooLarge("state leakage " + std::to_string(state.leakage()) + " exceeds 1e-8");
}

double log_binomial(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

}  // namespace

Eigen::MatrixXd loss_kraus(int j, double eta, int cutoff) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterOutOfRange("eta must be in [0, 1]");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int n = j; n <= cutoff; ++n) {
    const double c = std::sqrt(std::exp(log_binomial(n, j)));
    a(n - j, n) = c * std::pow(eta, 0.5 * (n - j)) * std::pow(1.0 - eta, 0.5 * j);
  }
  return a;
}

TwoModeDensity pure_loss(const TwoModeState& state, double eta) {
  check_inputs(state, eta);
  const BasisDescriptor b = state.basis();
  const int c = b.cutoff;
  const Eigen::MatrixXcd psi = state.as_matrix();
  std::vector<Eigen::MatrixXd> kraus;
  for (int j = 0; j <= c; ++j) kraus.push_back(loss_kraus(j, eta, c));
  // rho = sum_{j1, j2} vec(A_j1 Psi A_j2^T) vec(...)^dag, vec in flat k*dim + l order.
  Eigen::MatrixXcd branches(b.size(), (c + 1) * (c + 1));
  for (int j1 = 0; j1 <= c; ++j1) {
    const Eigen::MatrixXcd left = kraus[j1] * psi;
    for (int j2 = 0; j2 <= c; ++j2) {
      const Eigen::MatrixXcd out = left * kraus[j2].transpose();
      auto col = branches.col(j1 * (c + 1) + j2);
      for (int k = 0; k <= c; ++k)
        for (int l = 0; l <= c; ++l) col(b.index(k, l)) = out(k, l);
    }
  }
  TwoModeDensity d;
  d.basis = b;
  d.rho = branches * branches.adjoint();
  d.trace_defect = std::abs(d.rho.trace().real() - 1.0);
  return d;
}

TwoModeDensity pure_loss(const TwoModeDensity& rho, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ParameterOutOfRange("eta must be in [0, 1]");
  const BasisDescriptor b = rho.basis;
  const int c = b.cutoff;
  std::vector<Eigen::MatrixXd> kraus;
  for (int j = 0; j <= c; ++j) kraus.push_back(loss_kraus(j, eta, c));
  TwoModeDensity d;
  d.basis = b;
  d.rho = Eigen::MatrixXcd::Zero(b.size(), b.size());
  for (int j1 = 0; j1 <= c; ++j1) {
    for (int j2 = 0; j2 <= c; ++j2) {
      // Kronecker product in flat k*dim + l order
      Eigen::MatrixXd k(b.size(), b.size());
      for (int r = 0; r <= c; ++r)
        for (int s = 0; s <= c; ++s) k.block(r * b.dim(), s * b.dim(), b.dim(), b.dim()) = kraus[j1](r, s) * kraus[j2];
      d.rho += k * rho.rho * k.transpose();
    }
  }
  d.trace_defect = std::abs(d.rho.trace().real() - 1.0);
  return d;
}

double fidelity_to_pure(const TwoModeState& target, const TwoModeDensity& rho) {
  if (!(target.basis() == rho.basis)) throw BasisMismatch("fidelity_to_pure: basis mismatch");
  return target.amplitudes().dot(rho.rho * target.amplitudes()).real();
}

double loss_fidelity(const TwoModeState& target, double eta) {
  check_inputs(target, eta);
  const int c = target.basis().cutoff;
  const Eigen::MatrixXcd psi = target.as_matrix();
  std::vector<Eigen::MatrixXd> kraus;
  for (int j = 0; j <= c; ++j) kraus.push_back(loss_kraus(j, eta, c));
  // <psi| A_j1 (x) A_j2 |psi> = tr(Psi^dag A_j1 Psi A_j2^T)
  double f = 0.0;
  for (int j1 = 0; j1 <= c; ++j1) {
    const Eigen::MatrixXcd b = psi.adjoint() * kraus[j1] * psi;
    for (int j2 = 0; j2 <= c; ++j2) f += std::norm((b.array() * kraus[j2].array()).sum());
  }
  return f;
}

LossResult min_transmission(const TwoModeState& target, const ThresholdResult& threshold, const LossConfig& config) {
  if (config.grid_points < 2) throw InvalidConfig("loss.grid_points: must be >= 2");
  if (!(config.tol > 0.0)) throw InvalidConfig("loss.tol: must be > 0");
  LossResult out;
  out.threshold_used = threshold;
  const double t = threshold.value;
  const int g = config.grid_points;
  std::vector<double> f(g);
  auto eta_at = [&](int i) { return double(i) / (g - 1); };
  const int nthreads = std::min(std::max(config.jobs, 1), g);
  std::vector<std::thread> threads;
  for (int th = 1; th < nthreads; ++th)
    threads.emplace_back([&, th] {
      for (int i = th; i < g; i += nthreads) f[i] = loss_fidelity(target, eta_at(i));
    });
  for (int i = 0; i < g; i += nthreads) f[i] = loss_fidelity(target, eta_at(i));
  for (auto& th : threads) th.join();
  for (int i = 0; i < g; ++i) out.fidelity_curve.emplace_back(eta_at(i), f[i]);

  out.monotone_verified = true;
  for (int i = 1; i < g; ++i)
    if (f[i] < f[i - 1] - 1e-12) out.monotone_verified = false;

  if (t >= 1.0) {
    out.no_margin = true;
    out.eta_min = 1.0;
    return out;
  }
  if (f[0] >= t) {
    out.eta_min = 0.0;
    return out;
  }
  // First grid crossing; with a non-monotone curve this is the smallest crossing seen.
  int i = 1;
  while (i < g && f[i] < t) ++i;
  if (i == g) {
    // Only reachable for thresholds within rounding of F(1) = 1.
    out.no_margin = true;
    out.eta_min = 1.0;
    return out;
  }
  double lo = eta_at(i - 1), hi = eta_at(i);
  while (hi - lo > config.tol) {
    const double mid = 0.5 * (lo + hi);
    if (loss_fidelity(target, mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  out.eta_min = hi;
  return out;
}

}  // namespace qng
