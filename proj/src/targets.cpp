#include "qng/targets.hpp"

#include <algorithm>
#include <cmath>

#include "qng/detail/chain_generator.hpp"

namespace qng {

std::string to_string(TargetFamily f) {
  switch (f) {
    case TargetFamily::fock_pair: return "fock_pair";
    case TargetFamily::noon_like: return "noon_like";
    case TargetFamily::hybrid1: return "hybrid1";
    case TargetFamily::hybrid2: return "hybrid2";
    case TargetFamily::photon_subtracted: return "photon_subtracted";
  }
  return "unknown";
}

TargetFamily family_from_string(const std::string& name) {
  for (auto f : {TargetFamily::fock_pair, TargetFamily::noon_like, TargetFamily::hybrid1,
                 TargetFamily::hybrid2, TargetFamily::photon_subtracted})
    if (to_string(f) == name) return f;
  throw InvalidConfig("family: unknown target family '" + name + "'");
}

// ---------------------------------------------------------------- cats

CatState cat_state(double alpha, int parity, int cutoff) {
  if (parity != 1 && parity != -1) throw ParameterOutOfRange("cat parity must be +1 or -1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterOutOfRange("alpha must be >= 0");
  if (cutoff < 1) throw CutoffTooSmall("cat state needs cutoff >= 1");
  CatState cat;
  cat.amplitudes = Eigen::VectorXd::Zero(cutoff + 1);
  const int first = parity == 1 ? 0 : 1;
  if (alpha == 0.0) {
    cat.amplitudes(first) = 1.0;
    cat.degenerate = parity == -1;
    return cat;
  }
  // |alpha> + p|-alpha> keeps 2 e^{-a^2/2} a^n / sqrt(n!) on matching parity;
  // its norm^2 is 2 (1 + p e^{-2a^2}).
  const double a2 = alpha * alpha;
  const double norm2 = parity == 1 ? 2.0 * (1.0 + std::exp(-2.0 * a2)) : -2.0 * std::expm1(-2.0 * a2);
  // log of a^n / sqrt(n!) to stay finite for small alpha and large n
  double kept = 0.0;
  for (int n = first; n <= cutoff; n += 2) {
    const double logc = n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0) - 0.5 * a2;
    const double c = 2.0 * std::exp(logc) / std::sqrt(norm2);
    cat.amplitudes(n) = c;
    kept += c * c;
  }
  cat.tail = std::max(0.0, 1.0 - kept);
  // Direct tail sum when the complement is below rounding.
  if (cat.tail < 1e-12) {
    double t = 0.0;
    for (int n = cutoff + 1; n < cutoff + 400; ++n) {
      if ((n - first) % 2 != 0) continue;
      const double logc = n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0) - 0.5 * a2;
      const double c = 2.0 * std::exp(logc) / std::sqrt(norm2);
      t += c * c;
      if (c * c < 1e-30 * std::max(t, 1e-300)) break;
    }
    cat.tail = t;
  }
  return cat;
}

int cat_auto_cutoff(double alpha) {
  for (int c = kMinCatCutoff;; ++c) {
    if (cat_state(alpha, 1, c).tail < kCatTail && cat_state(alpha, -1, c).tail < kCatTail) return c;
    if (c > 2000) throw CutoffTooSmall("cat amplitude too large for automatic cutoff");
  }
}

// ---------------------------------------------------------------- Fock families

TwoModeState fock_pair(double theta, int n, BasisDescriptor basis) {
  if (n < 0) throw ParameterOutOfRange("n must be non-negative");
  if (n > basis.cutoff) throw CutoffTooSmall("fock_pair needs cutoff >= n");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.size());
  a(basis.index(0, 0)) += std::cos(theta);
  a(basis.index(n, n)) += std::sin(theta);
  return TwoModeState(basis, a / a.norm());
}

TwoModeState noon_like(double theta, int n, BasisDescriptor basis) {
  if (n < 0) throw ParameterOutOfRange("n must be non-negative");
  if (2 * n > basis.cutoff) throw CutoffTooSmall("noon_like needs cutoff >= 2n");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.size());
  a(basis.index(0, 2 * n)) += std::cos(theta);
  a(basis.index(2 * n, 0)) += std::sin(theta);
  return TwoModeState(basis, a / a.norm());
}

TwoModeState hybrid(int variant, double theta, double alpha, BasisDescriptor basis) {
  if (variant != 1 && variant != 2) throw ParameterOutOfRange("hybrid variant must be 1 or 2");
  const CatState even = cat_state(alpha, 1, basis.cutoff);
  const CatState odd = cat_state(alpha, -1, basis.cutoff);
  const CatState& first = variant == 1 ? even : odd;   // paired with |0>
  const CatState& second = variant == 1 ? odd : even;  // paired with |1>
  const double c = std::cos(theta), s = std::sin(theta);
  const double leak = c * c * first.tail + s * s * second.tail;
  if (leak > kTargetLeakage) throw CutoffTooSmall("cutoff too small for the cat tails");
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(basis.size());
  for (int l = 0; l <= basis.cutoff; ++l) {
    a(basis.index(0, l)) = c * first.amplitudes(l);
    a(basis.index(1, l)) = s * second.amplitudes(l);
  }
  return TwoModeState(basis, std::move(a), leak);
}

// ---------------------------------------------------------------- photon subtraction

std::pair<double, double> squeezing_generators(double r) { return {0.5 * r, -0.5 * r}; }

namespace {

// Single-mode S(xi)|0> for real xi on 0..cutoff, from the even-parity chain.
Eigen::VectorXd squeezed_vacuum(double xi, int cutoff) {
  const int len = cutoff / 2 + 1;
  const int pad = detail::squeeze_padding(cutoff, detail::single_mode_growth(std::abs(xi)));
  std::vector<double> c(len + pad / 2);
  for (int j = 0; j < static_cast<int>(c.size()); ++j)
    c[j] = std::sqrt(double(2 * j + 1) * double(2 * j + 2));
  detail::ChainGenerator gen(c);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(cutoff + 1);
  const Eigen::MatrixXd col = gen.exp_block(xi, 0, len, 0, 1);
  for (int j = 0; j < len; ++j) out(2 * j) = col(j, 0);
  return out;
}

int subtraction_work_cutoff(int cutoff, double r) {
  // Weight of squeezed vacuum decays like tanh(r)^n per mode.
  const double t = std::tanh(std::abs(r));
  int need = 0;
  if (t > 0.0) need = static_cast<int>(std::ceil(40.0 / -std::log(t)));
  return std::min(std::max(cutoff + 20, need + 10), 600);
}

TwoModeState subtract(const TwoModeState& s, double phi) {
  const double c = std::cos(phi), sn = std::sin(phi);
  const BasisDescriptor b = s.basis();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(b.size());
  if (std::abs(c) > 1e-15) out += c * annihilate(Mode::first, s).amplitudes();
  if (std::abs(sn) > 1e-15) out += sn * annihilate(Mode::second, s).amplitudes();
  if (out.norm() < 1e-14) throw ZeroState("photon subtraction produced the zero vector");
  return TwoModeState(b, std::move(out));
}

void check_subtraction(int m, const std::vector<double>& phis) {
  if (m != 1 && m != 2) throw ParameterOutOfRange("m must be 1 or 2");
  if (static_cast<int>(phis.size()) != m) throw ParameterOutOfRange("need exactly m subtraction angles");
}

}  // namespace

TwoModeState photon_subtracted(int m, const std::vector<double>& phis, double r,
                               BasisDescriptor basis, double xi_max) {
  check_subtraction(m, phis);
  const auto [xi1, xi2] = squeezing_generators(r);
  if (std::abs(xi1) > xi_max) throw ParameterOutOfRange("squeezing exceeds xi_max");
  if (basis.cutoff < m) throw CutoffTooSmall("photon_subtracted needs cutoff >= m");
  const int work = subtraction_work_cutoff(basis.cutoff, r);
  const BasisDescriptor wb(work);
  const Eigen::VectorXd v1 = squeezed_vacuum(xi1, work);
  const Eigen::VectorXd v2 = squeezed_vacuum(xi2, work);
  Eigen::VectorXcd a(wb.size());
  for (int k = 0; k <= work; ++k)
    for (int l = 0; l <= work; ++l) a(wb.index(k, l)) = v1(k) * v2(l);
  TwoModeState s(wb, std::move(a));
  for (double phi : phis) s = subtract(s, phi);
  return s.normalized().with_cutoff(basis.cutoff);
}

TwoModeState core_state(int m, const std::vector<double>& phis, double r) {
  check_subtraction(m, phis);
  const auto [xi1, xi2] = squeezing_generators(r);
  const BasisDescriptor b(m);
  // Each subtraction becomes cos phi (c1 a1 + s1 a1^dag) + sin phi (c2 a2 + s2 a2^dag)
  // after moving it through the squeezers onto the vacuum.
  const double c1 = std::cosh(2 * xi1), s1 = std::sinh(2 * xi1);
  const double c2 = std::cosh(2 * xi2), s2 = std::sinh(2 * xi2);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b.size());
  v(b.index(0, 0)) = 1.0;
  for (double phi : phis) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(b.size());
    for (int k = 0; k <= m; ++k) {
      for (int l = 0; l <= m; ++l) {
        const cd x = v(b.index(k, l));
        if (x == cd(0.0)) continue;
        const double cp = std::cos(phi), sp = std::sin(phi);
        if (k > 0) w(b.index(k - 1, l)) += cp * c1 * std::sqrt(double(k)) * x;
        if (k < m) w(b.index(k + 1, l)) += cp * s1 * std::sqrt(double(k + 1)) * x;
        if (l > 0) w(b.index(k, l - 1)) += sp * c2 * std::sqrt(double(l)) * x;
        if (l < m) w(b.index(k, l + 1)) += sp * s2 * std::sqrt(double(l + 1)) * x;
      }
    }
    v = w;
  }
  if (v.norm() < 1e-14) throw ZeroState("core state vanishes");
  return TwoModeState(b, v / v.norm());
}

// ---------------------------------------------------------------- specs

void validate(const TargetSpec& spec) {
  if (!std::isfinite(spec.theta)) throw InvalidConfig("theta: must be finite");
  if (spec.cutoff && *spec.cutoff < 0) throw InvalidConfig("cutoff: must be non-negative");
  switch (spec.family) {
    case TargetFamily::fock_pair:
    case TargetFamily::noon_like:
      if (spec.n < 0) throw InvalidConfig("n: must be non-negative");
      break;
    case TargetFamily::hybrid1:
    case TargetFamily::hybrid2:
      if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) throw InvalidConfig("alpha: must be >= 0");
      break;
    case TargetFamily::photon_subtracted:
      if (spec.m != 1 && spec.m != 2) throw InvalidConfig("m: must be 1 or 2");
      if (static_cast<int>(spec.phis.size()) != spec.m) throw InvalidConfig("phis: need exactly m angles");
      if (!std::isfinite(spec.r) || std::abs(spec.r) / 2 > kDefaultXiMax)
        throw InvalidConfig("r: out of range");
      break;
  }
}

int auto_cutoff(const TargetSpec& spec) {
  switch (spec.family) {
    case TargetFamily::fock_pair: return spec.n;
    case TargetFamily::noon_like: return 2 * spec.n;
    case TargetFamily::hybrid1:
    case TargetFamily::hybrid2: return cat_auto_cutoff(spec.alpha);
    case TargetFamily::photon_subtracted: {
      const int work = subtraction_work_cutoff(spec.m, spec.r);
      auto s = photon_subtracted(spec.m, spec.phis, spec.r, BasisDescriptor(work));
      return std::max(spec.m, effective_support(s, kTargetLeakage));
    }
  }
  return 0;
}

TwoModeState make_target(const TargetSpec& spec) {
  validate(spec);
  const BasisDescriptor b(spec.cutoff ? *spec.cutoff : auto_cutoff(spec));
  switch (spec.family) {
    case TargetFamily::fock_pair: return fock_pair(spec.theta, spec.n, b);
    case TargetFamily::noon_like: return noon_like(spec.theta, spec.n, b);
    case TargetFamily::hybrid1: return hybrid(1, spec.theta, spec.alpha, b);
    case TargetFamily::hybrid2: return hybrid(2, spec.theta, spec.alpha, b);
    case TargetFamily::photon_subtracted: return photon_subtracted(spec.m, spec.phis, spec.r, b);
  }
  throw InvalidConfig("family: unsupported");
}

int effective_support(const TwoModeState& s, double weight) {
  const BasisDescriptor b = s.basis();
  // outside[c] = weight with max(k, l) > c
  std::vector<double> shell(b.dim(), 0.0);
  for (int k = 0; k <= b.cutoff; ++k)
    for (int l = 0; l <= b.cutoff; ++l) shell[std::max(k, l)] += std::norm(s.amplitudes()(b.index(k, l)));
  double outside = s.leakage();
  for (int c = b.cutoff; c >= 0; --c) {
    if (outside + shell[c] > weight) return c;
    outside += shell[c];
  }
  return 0;
}

}  // namespace qng
