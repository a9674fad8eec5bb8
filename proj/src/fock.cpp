#include "qng/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qng/detail/chain_generator.hpp"

namespace qng {

Mode mode_from_int(int m) {
  if (m == 1) return Mode::first;
  if (m == 2) return Mode::second;
  throw ParameterOutOfRange("mode must be 1 or 2, got " + std::to_string(m));
}

BasisDescriptor::BasisDescriptor(int c) : cutoff(c) {
  if (c < 0) throw ParameterOutOfRange("cutoff must be non-negative");
}

// ---------------------------------------------------------------- state

TwoModeState::TwoModeState(BasisDescriptor basis, Eigen::VectorXcd amp, double leakage)
    : basis_(basis), amp_(std::move(amp)), leakage_(leakage) {
  if (amp_.size() != basis_.size())
    throw BasisMismatch("amplitude vector length does not match basis");
  if (!(leakage_ >= 0.0)) throw ParameterOutOfRange("leakage must be non-negative");
}

TwoModeState TwoModeState::basis_state(BasisDescriptor basis, int k, int l) {
  if (k < 0 || l < 0 || k > basis.cutoff || l > basis.cutoff)
    throw CutoffTooSmall("basis state outside cutoff");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.size());
  a(basis.index(k, l)) = 1.0;
  return TwoModeState(basis, std::move(a));
}

TwoModeState TwoModeState::from_matrix(const Eigen::MatrixXcd& coeffs, double leakage) {
  const int dim = static_cast<int>(std::max(coeffs.rows(), coeffs.cols()));
  BasisDescriptor b(dim - 1);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(b.size());
  for (int k = 0; k < coeffs.rows(); ++k)
    for (int l = 0; l < coeffs.cols(); ++l) a(b.index(k, l)) = coeffs(k, l);
  return TwoModeState(b, std::move(a), leakage);
}

cd TwoModeState::amplitude(int k, int l) const {
  if (k < 0 || l < 0 || k > basis_.cutoff || l > basis_.cutoff) return 0.0;
  return amp_(basis_.index(k, l));
}

TwoModeState TwoModeState::normalized() const {
  const double total = norm_squared() + leakage_;
  if (total < 1e-28) throw ZeroState("cannot normalize a zero state");
  return TwoModeState(basis_, amp_ / std::sqrt(total), leakage_ / total);
}

Eigen::MatrixXcd TwoModeState::as_matrix() const {
  const int d = basis_.dim();
  Eigen::MatrixXcd m(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) m(k, l) = amp_(basis_.index(k, l));
  return m;
}

TwoModeState TwoModeState::swapped_modes() const {
  return from_matrix(as_matrix().transpose(), leakage_);
}

TwoModeState TwoModeState::with_cutoff(int cutoff) const {
  BasisDescriptor nb(cutoff);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(nb.size());
  double lost = 0.0;
  for (int k = 0; k <= basis_.cutoff; ++k) {
    for (int l = 0; l <= basis_.cutoff; ++l) {
      const cd v = amp_(basis_.index(k, l));
      if (k <= cutoff && l <= cutoff)
        a(nb.index(k, l)) = v;
      else
        lost += std::norm(v);
    }
  }
  return TwoModeState(nb, std::move(a), leakage_ + lost);
}

// ---------------------------------------------------------------- operator

TwoModeOperator::TwoModeOperator(BasisDescriptor basis, Eigen::MatrixXcd mat)
    : basis_(basis), mat_(std::move(mat)) {
  const int n = basis_.size();
  if (mat_.rows() != n || mat_.cols() != n)
    throw BasisMismatch("operator matrix shape does not match basis");
  col_leak_.resize(n);
  for (int j = 0; j < n; ++j) col_leak_(j) = std::max(0.0, 1.0 - mat_.col(j).squaredNorm());
  std::vector<int> interior;
  for (int j = 0; j < n; ++j)
    if (col_leak_(j) < kInteriorLeakage) interior.push_back(j);
  if (interior.empty()) return;
  Eigen::MatrixXcd cols(n, interior.size());
  for (std::size_t i = 0; i < interior.size(); ++i) cols.col(i) = mat_.col(interior[i]);
  Eigen::MatrixXcd gram = mat_.adjoint() * cols;
  for (std::size_t i = 0; i < interior.size(); ++i) gram(interior[i], i) -= 1.0;
  defect_ = gram.colwise().norm().maxCoeff();
}

TwoModeOperator TwoModeOperator::identity(BasisDescriptor basis) {
  return TwoModeOperator(basis, Eigen::MatrixXcd::Identity(basis.size(), basis.size()));
}

cd TwoModeOperator::element(int m, int n, int k, int l) const {
  return mat_(basis_.index(m, n), basis_.index(k, l));
}

TwoModeOperator TwoModeOperator::adjoint() const {
  return TwoModeOperator(basis_, mat_.adjoint());
}

// ---------------------------------------------------------------- structured factors

namespace detail {

namespace {

// Gathers rows `idx` of x, multiplies by block, scatters back.
void block_left_multiply(const Eigen::MatrixXcd& block, const std::vector<int>& idx,
                         Eigen::MatrixXcd& x) {
  const int n = static_cast<int>(idx.size());
  Eigen::MatrixXcd rows(n, x.cols());
  for (int i = 0; i < n; ++i) rows.row(i) = x.row(idx[i]);
  Eigen::MatrixXcd out = block * rows;
  for (int i = 0; i < n; ++i) x.row(idx[i]) = out.row(i);
}

}  // namespace

int squeeze_padding(int cutoff, double growth) {
  const double extra = 3.0 * (cutoff + 1) * (growth - 1.0);
  return 40 + static_cast<int>(std::ceil(std::min(extra, 600.0)));
}

void left_phase(double phi, Mode mode, int cutoff, Eigen::MatrixXcd& x) {
  const BasisDescriptor b(cutoff);
  for (int k = 0; k <= cutoff; ++k) {
    for (int l = 0; l <= cutoff; ++l) {
      const int q = mode == Mode::first ? k : l;
      if (q == 0) continue;
      x.row(b.index(k, l)) *= std::polar(1.0, phi * q);
    }
  }
}

void left_beam_splitter(cd tau, int cutoff, Eigen::MatrixXcd& x) {
  const double t = std::abs(tau);
  if (t == 0.0) return;
  const double chi = std::arg(tau);
  const BasisDescriptor b(cutoff);
  // Block N: states |k, N-k>, coupling sqrt((k+1)(N-k)); complete, so no padding.
  for (int total = 1; total <= 2 * cutoff; ++total) {
    std::vector<double> c(total);
    for (int k = 0; k < total; ++k) c[k] = std::sqrt(double(k + 1) * double(total - k));
    const int lo = std::max(0, total - cutoff);
    const int hi = std::min(total, cutoff);
    const int len = hi - lo + 1;
    ChainGenerator gen(c);
    Eigen::MatrixXcd block = gen.exp_block(t, lo, len, lo, len).cast<cd>();
    if (chi != 0.0) {
      for (int a = 0; a < len; ++a)
        for (int bb = 0; bb < len; ++bb) block(a, bb) *= std::polar(1.0, chi * (a - bb));
    }
    std::vector<int> idx(len);
    for (int i = 0; i < len; ++i) idx[i] = b.index(lo + i, total - lo - i);
    block_left_multiply(block, idx, x);
  }
}

void left_two_mode_squeeze(cd xi, int cutoff, int pad, Eigen::MatrixXcd& x) {
  const double r = std::abs(xi);
  if (r == 0.0) return;
  const double chi = std::arg(xi);
  const BasisDescriptor b(cutoff);
  // Chain d = k - l: states |j+d, j> (d >= 0) or |j, j-d>, coupling sqrt((j+1)(j+1+|d|)).
  for (int d = -cutoff; d <= cutoff; ++d) {
    const int ad = std::abs(d);
    const int len = cutoff - ad + 1;
    const int full = len + pad;
    std::vector<double> c(full - 1);
    for (int j = 0; j < full - 1; ++j) c[j] = std::sqrt(double(j + 1) * double(j + 1 + ad));
    ChainGenerator gen(c);
    Eigen::MatrixXcd block = gen.exp_block(r, 0, len, 0, len).cast<cd>();
    if (chi != 0.0) {
      for (int a = 0; a < len; ++a)
        for (int bb = 0; bb < len; ++bb) block(a, bb) *= std::polar(1.0, chi * (a - bb));
    }
    std::vector<int> idx(len);
    for (int j = 0; j < len; ++j) idx[j] = d >= 0 ? b.index(j + d, j) : b.index(j, j - d);
    block_left_multiply(block, idx, x);
  }
}

void left_single_mode_squeeze(cd xi, Mode mode, int cutoff, int pad, Eigen::MatrixXcd& x) {
  const double r = std::abs(xi);
  if (r == 0.0) return;
  const double chi = std::arg(xi);
  const BasisDescriptor b(cutoff);
  for (int p = 0; p <= 1 && p <= cutoff; ++p) {
    const int len = (cutoff - p) / 2 + 1;
    const int full = len + pad / 2 + 1;
    std::vector<double> c(full - 1);
    for (int j = 0; j < full - 1; ++j) c[j] = std::sqrt(double(2 * j + p + 1) * double(2 * j + p + 2));
    ChainGenerator gen(c);
    // S(|xi| e^{i chi}) = R(chi/2) S(|xi|) R(-chi/2)
    Eigen::MatrixXcd block = gen.exp_block(r, 0, len, 0, len).cast<cd>();
    if (chi != 0.0) {
      for (int a = 0; a < len; ++a)
        for (int bb = 0; bb < len; ++bb) block(a, bb) *= std::polar(1.0, chi * (a - bb));
    }
    for (int other = 0; other <= cutoff; ++other) {
      std::vector<int> idx(len);
      for (int j = 0; j < len; ++j)
        idx[j] = mode == Mode::first ? b.index(2 * j + p, other) : b.index(other, 2 * j + p);
      block_left_multiply(block, idx, x);
    }
  }
}

Eigen::MatrixXcd embedded_identity(int big_cutoff, int cutoff) {
  const BasisDescriptor big(big_cutoff), small(cutoff);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(big.size(), small.size());
  for (int k = 0; k <= cutoff; ++k)
    for (int l = 0; l <= cutoff; ++l) x(big.index(k, l), small.index(k, l)) = 1.0;
  return x;
}

Eigen::MatrixXcd crop_rows(const Eigen::MatrixXcd& x, int big_cutoff, int cutoff) {
  const BasisDescriptor big(big_cutoff), small(cutoff);
  Eigen::MatrixXcd y(small.size(), x.cols());
  for (int k = 0; k <= cutoff; ++k)
    for (int l = 0; l <= cutoff; ++l) y.row(small.index(k, l)) = x.row(big.index(k, l));
  return y;
}

}  // namespace detail

// ---------------------------------------------------------------- constructors

namespace {

void check_xi(cd xi, double xi_max) {
  if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()) || std::abs(xi) > xi_max)
    throw ParameterOutOfRange("|xi| = " + std::to_string(std::abs(xi)) + " exceeds xi_max = " +
                              std::to_string(xi_max));
}

}  // namespace

TwoModeOperator beam_splitter(cd tau, BasisDescriptor basis) {
  if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
    throw ParameterOutOfRange("beam splitter parameter must be finite");
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  detail::left_beam_splitter(tau, basis.cutoff, x);
  return TwoModeOperator(basis, std::move(x));
}

TwoModeOperator phase_shift(double phi, Mode mode, BasisDescriptor basis) {
  if (!std::isfinite(phi)) throw ParameterOutOfRange("phase must be finite");
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  detail::left_phase(phi, mode, basis.cutoff, x);
  return TwoModeOperator(basis, std::move(x));
}

TwoModeOperator single_mode_squeeze(cd xi, Mode mode, BasisDescriptor basis, double xi_max) {
  check_xi(xi, xi_max);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  detail::left_single_mode_squeeze(
      xi, mode, basis.cutoff,
      detail::squeeze_padding(basis.cutoff, detail::single_mode_growth(std::abs(xi))), x);
  return TwoModeOperator(basis, std::move(x));
}

TwoModeOperator two_mode_squeeze(cd xi, BasisDescriptor basis, double xi_max) {
  check_xi(xi, xi_max);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  detail::left_two_mode_squeeze(
      xi, basis.cutoff,
      detail::squeeze_padding(basis.cutoff, detail::two_mode_growth(std::abs(xi))), x);
  return TwoModeOperator(basis, std::move(x));
}

TwoModeState annihilate(Mode mode, const TwoModeState& state) {
  const BasisDescriptor b = state.basis();
  if (b.cutoff < 1) throw CutoffTooSmall("annihilation needs cutoff >= 1");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(b.size());
  for (int k = 0; k <= b.cutoff; ++k) {
    for (int l = 0; l <= b.cutoff; ++l) {
      const int q = mode == Mode::first ? k : l;
      if (q == 0) continue;
      const int target = mode == Mode::first ? b.index(k - 1, l) : b.index(k, l - 1);
      out(target) = std::sqrt(double(q)) * state.amplitudes()(b.index(k, l));
    }
  }
  if (out.norm() < 1e-14) throw ZeroState("annihilation produced the zero vector");
  // Weight above the cutoff carries at least cutoff+1 photons.
  return TwoModeState(b, std::move(out), state.leakage() * double(b.cutoff + 1));
}

TwoModeState apply(const TwoModeOperator& op, const TwoModeState& state) {
  if (!(op.basis() == state.basis())) throw BasisMismatch("apply: basis mismatch");
  Eigen::VectorXcd y = op.matrix() * state.amplitudes();
  const double lost = std::max(0.0, state.norm_squared() - y.squaredNorm());
  const double leak = state.leakage() + lost;
  return TwoModeState(state.basis(), std::move(y), leak);
}

TwoModeOperator compose(const TwoModeOperator& a, const TwoModeOperator& b) {
  if (!(a.basis() == b.basis())) throw BasisMismatch("compose: basis mismatch");
  return TwoModeOperator(a.basis(), a.matrix() * b.matrix());
}

cd inner(const TwoModeState& a, const TwoModeState& b) {
  if (!(a.basis() == b.basis())) throw BasisMismatch("inner: basis mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace qng
