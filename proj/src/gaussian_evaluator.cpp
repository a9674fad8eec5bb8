#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qng/detail/chain_generator.hpp"
#include "qng/detail/triangle_evaluator.hpp"

namespace qng::detail {

namespace {

using ld = long double;

std::vector<double> bs_couplings(int total) {
  std::vector<double> c(total);
  for (int k = 0; k < total; ++k) c[k] = std::sqrt(double(k + 1) * double(total - k));
  return c;
}

void phases(double phi1, double phi2, std::vector<Eigen::VectorXcd>& x) {
  for (int total = 0; total < static_cast<int>(x.size()); ++total)
    for (int k = 0; k <= total; ++k) x[total](k) *= std::polar(1.0, phi1 * k + phi2 * (total - k));
}

}  // namespace

TriangleEvaluator::TriangleEvaluator(const TwoModeState& target, int input_cutoff)
    : ct_(target.basis().cutoff), n_(input_cutoff) {
  if (input_cutoff < 0) throw CutoffTooSmall("input cutoff must be >= 0");
  const BasisDescriptor b = target.basis();
  target_.resize(2 * ct_ + 1);
  for (int total = 0; total <= 2 * ct_; ++total) {
    target_[total] = Eigen::VectorXcd::Zero(total + 1);
    for (int k = std::max(0, total - ct_); k <= std::min(total, ct_); ++k)
      target_[total](k) = target.amplitudes()(b.index(k, total - k));
  }
  const int top = 2 * std::max(ct_, n_);
  chains_.reserve(top + 1);
  for (int total = 0; total <= top; ++total) chains_.emplace_back(bs_couplings(total));
}

void TriangleEvaluator::beam_splitter(double t, Blocks& x, bool box_rows) const {
  if (t == 0.0 && !box_rows) return;
  for (int total = 1; total < static_cast<int>(x.size()); ++total) {
    const int lo = box_rows ? std::max(0, total - n_) : 0;
    const int hi = box_rows ? std::min(total, n_) : total;
    if (hi < lo) continue;
    x[total] = chains_[total].apply(t, x[total], lo, hi - lo + 1);
    if (box_rows && lo > 0) {
      // Keep indexing by k: pad the dropped rows with zeros.
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(total + 1);
      full.segment(lo, hi - lo + 1) = x[total];
      x[total] = std::move(full);
    } else if (box_rows && hi < total) {
      Eigen::VectorXcd full = Eigen::VectorXcd::Zero(total + 1);
      full.head(hi + 1) = x[total];
      x[total] = std::move(full);
    }
  }
}

// S12(xi) = exp(G a1^dag a2^dag) cosh(xi)^-(n1+n2+1) exp(-G a1 a2), G = tanh xi, on
// each chain |j + d, j> (or |j, j + |d|>). Long double keeps the alternating sum
// accurate; terms stay below ~1e9 for the box sizes used here.
TriangleEvaluator::Blocks TriangleEvaluator::two_mode_squeeze(double xi, const Blocks& x) const {
  const int in_top = static_cast<int>(x.size()) - 1;
  const int out_top = 2 * n_;
  Blocks y(out_top + 1);
  for (int total = 0; total <= out_top; ++total) y[total] = Eigen::VectorXcd::Zero(total + 1);
  if (xi == 0.0) {
    for (int total = 0; total <= std::min(in_top, out_top); ++total) y[total] = x[total];
    return y;
  }
  const ld g = std::tanh(static_cast<ld>(xi));
  const ld sech = 1.0L / std::cosh(static_cast<ld>(xi));
  const int len_max = std::max(in_top, out_top) / 2 + 2;
  std::vector<ld> pos(len_max), neg(len_max);
  pos[0] = neg[0] = 1.0L;
  for (int k = 1; k < len_max; ++k) {
    pos[k] = pos[k - 1] * g / k;
    neg[k] = -neg[k - 1] * g / k;
  }
  std::vector<ld> f(len_max), ur(len_max), ui(len_max), vr(len_max), vi(len_max), e(len_max);
  for (int d = -std::min(in_top, out_top); d <= std::min(in_top, out_top); ++d) {
    const int ad = std::abs(d);
    const int in_len = (in_top - ad) / 2 + 1;
    const int out_len = (out_top - ad) / 2 + 1;
    const int s_len = std::min(in_len, out_len);
    // f_j = sqrt(j! (j + |d|)!), e_s = sech^(2s + |d| + 1)
    ld fd = 1.0L;
    for (int q = 2; q <= ad; ++q) fd *= q;
    f[0] = std::sqrt(fd);
    for (int j = 1; j < std::max(in_len, out_len); ++j) f[j] = f[j - 1] * std::sqrt(static_cast<ld>(j) * (j + ad));
    e[0] = std::pow(sech, ad + 1);
    for (int s = 1; s < s_len; ++s) e[s] = e[s - 1] * sech * sech;
    auto at = [&](int j) { return d >= 0 ? std::pair{2 * j + ad, j + ad} : std::pair{2 * j + ad, j}; };
    for (int i = 0; i < in_len; ++i) {
      const auto [total, k] = at(i);
      const cd v = x[total](k);
      ur[i] = f[i] * static_cast<ld>(v.real());
      ui[i] = f[i] * static_cast<ld>(v.imag());
    }
    for (int s = 0; s < s_len; ++s) {
      ld wr = 0, wi = 0;
      for (int i = s; i < in_len; ++i) {
        wr += neg[i - s] * ur[i];
        wi += neg[i - s] * ui[i];
      }
      const ld scale = e[s] / (f[s] * f[s]);
      vr[s] = wr * scale;
      vi[s] = wi * scale;
    }
    for (int m = 0; m < out_len; ++m) {
      ld sr = 0, si = 0;
      for (int s = 0; s <= std::min(m, s_len - 1); ++s) {
        sr += pos[m - s] * vr[s];
        si += pos[m - s] * vi[s];
      }
      const auto [total, k] = at(m);
      y[total](k) = cd(static_cast<double>(f[m] * sr), static_cast<double>(f[m] * si));
    }
  }
  return y;
}

Eigen::MatrixXcd TriangleEvaluator::box(const Blocks& x) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_ + 1, n_ + 1);
  const int top = std::min(static_cast<int>(x.size()) - 1, 2 * n_);
  for (int total = 0; total <= top; ++total)
    for (int k = std::max(0, total - n_); k <= std::min(total, n_); ++k) m(k, total - k) = std::conj(x[total](k));
  return m;
}

// U^dag = BS(-tau2) S12(-xi) R1(-phi) BS(-tau1) R2(-phi2) R1(-phi1)
Eigen::MatrixXcd TriangleEvaluator::overlap(const EntanglingParams& p) const {
  Blocks x = target_;
  phases(-p.phi1, -p.phi2, x);
  beam_splitter(-p.tau1, x, false);
  phases(-p.phi, 0.0, x);
  Blocks y = two_mode_squeeze(-p.xi, x);
  beam_splitter(-p.tau2, y, true);
  return box(y);
}

// U^dag = BS(-theta) R1(-phi1)
Eigen::MatrixXcd TriangleEvaluator::overlap(const PassiveParams& p) const {
  Blocks x = target_;
  if (static_cast<int>(x.size()) > 2 * n_ + 1) x.resize(2 * n_ + 1);
  phases(-p.phi1, 0.0, x);
  beam_splitter(-p.theta, x, true);
  return box(x);
}

double TriangleEvaluator::value(const EntanglingParams& p) const {
  return top_singular_value_squared(overlap(p));
}

double TriangleEvaluator::value(const PassiveParams& p) const {
  return top_singular_value_squared(overlap(p));
}

std::vector<Eigen::MatrixXcd> TriangleEvaluator::passive_parts(double theta) const {
  // R1(-phi1) weights the target's mode-1 photon number k1 by exp(-i k1 phi1);
  // after conjugation in M that is exp(+i k1 phi1).
  std::vector<Eigen::MatrixXcd> parts(ct_ + 1, Eigen::MatrixXcd::Zero(n_ + 1, n_ + 1));
  const int top = std::min(2 * ct_, 2 * n_);
  for (int total = 0; total <= top; ++total) {
    const int rlo = std::max(0, total - n_), rhi = std::min(total, n_);
    const int clo = std::max(0, total - ct_), chi = std::min(total, ct_);
    const Eigen::MatrixXd e = chains_[total].exp_block(-theta, rlo, rhi - rlo + 1, clo, chi - clo + 1);
    for (int k1 = clo; k1 <= chi; ++k1) {
      const cd a = std::conj(target_[total](k1));
      if (a == cd(0.0)) continue;
      for (int k = rlo; k <= rhi; ++k) parts[k1](k, total - k) += e(k - rlo, k1 - clo) * a;
    }
  }
  return parts;
}

double top_singular_value_squared_estimate(const Eigen::MatrixXcd& m, int steps) {
  const int n = static_cast<int>(m.cols());
  if (steps >= n) return top_singular_value_squared(m);
  // Lanczos on M^dag M with full reorthogonalization; Ritz values are lower bounds.
  Eigen::MatrixXcd q(n, steps + 1);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cd(1.0 + 0.37 * std::sin(1.3 * i + 0.2), 0.21 * std::cos(0.7 * i));
  q.col(0) = v.normalized();
  Eigen::VectorXd alpha(steps), beta(steps);
  int k = 0;
  for (; k < steps; ++k) {
    Eigen::VectorXcd w = m.adjoint() * (m * q.col(k));
    alpha(k) = q.col(k).dot(w).real();
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
    beta(k) = w.norm();
    if (beta(k) < 1e-13) {
      ++k;
      break;
    }
    q.col(k + 1) = w / beta(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  Eigen::VectorXd sub = beta.head(std::max(k - 1, 0));
  Eigen::VectorXd diag = alpha.head(k);
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

double top_singular_value_squared(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

}  // namespace qng::detail
