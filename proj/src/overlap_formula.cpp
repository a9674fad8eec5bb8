#include <array>
#include <cmath>
#include <vector>

#include "qng/fock.hpp"

namespace qng {

namespace {

using Linear = std::array<cd, 4>;  // coefficients of (lambda_k, lambda_l, lambda_m, lambda_n)

Linear lin(cd a, cd b, cd c, cd d) { return {a, b, c, d}; }

Linear operator+(const Linear& a, const Linear& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

Linear operator*(cd s, const Linear& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

using Quadratic = std::array<std::array<cd, 4>, 4>;

void add_product(Quadratic& q, cd scale, const Linear& a, const Linear& b) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i][j] += scale * a[i] * b[j];
}

// Coefficient of lambda^deg in exp(sum_ij q_ij lambda_i lambda_j).
cd exp_coefficient(const Quadratic& q, const std::array<int, 4>& deg) {
  std::array<int, 4> stride{};
  int total = 1;
  for (int i = 3; i >= 0; --i) {
    stride[i] = total;
    total *= deg[i] + 1;
  }
  std::vector<cd> poly(total, 0.0);
  poly[0] = 1.0;
  auto unflatten = [&](int f, std::array<int, 4>& e) {
    for (int i = 0; i < 4; ++i) {
      e[i] = f / stride[i];
      f %= stride[i];
    }
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      const cd c = i == j ? q[i][i] : q[i][j] + q[j][i];
      if (c == cd(0.0)) continue;
      std::vector<cd> next(poly);
      std::array<int, 4> e{};
      for (int f = 0; f < total; ++f) {
        if (poly[f] == cd(0.0)) continue;
        unflatten(f, e);
        cd term = poly[f];
        for (int p = 1;; ++p) {
          e[i] += 1;
          e[j] += 1;
          if (e[i] > deg[i] || e[j] > deg[j]) break;
          term *= c / double(p);
          int g = 0;
          for (int a = 0; a < 4; ++a) g += e[a] * stride[a];
          next[g] += term;
        }
      }
      poly.swap(next);
    }
  }
  return poly[total - 1];
}

cd formula(int k, int l, int m, int n, cd tau1, cd tau2, cd xi, double phi) {
  auto unit = [](cd z) { return std::abs(z) == 0.0 ? cd(1.0) : z / std::abs(z); };
  const double c2 = std::cos(std::abs(tau2)), s2 = std::sin(std::abs(tau2));
  const cd e2 = unit(tau2);
  const double c1 = std::cos(std::abs(tau1)), s1 = std::sin(std::abs(tau1));
  const cd e1 = unit(tau1);
  const double r = std::abs(xi);
  const cd eps = unit(xi);
  const double ch = std::cosh(r), sh = std::sinh(r), th = std::tanh(r);
  const cd ephi = std::polar(1.0, phi);

  // Creation side: U(tau2) e^{lambda_k a1^dag + lambda_l a2^dag} |00>
  const Linear mu1 = lin(c2, e2 * s2, 0, 0);
  const Linear mu2 = lin(-std::conj(e2) * s2, c2, 0, 0);
  // Moved through S12: a1^dag -> C a1^dag - conj(eps) Sh a2, a2^dag likewise.
  const Linear f1 = ch * mu1, f2 = ch * mu2;
  const Linear g1p = (-std::conj(eps) * sh) * mu2;
  const Linear g2p = (-std::conj(eps) * sh) * mu1;
  // Annihilation side: <00| e^{lambda_m a1 + lambda_n a2} U(tau1) R1(phi)
  const Linear nu1 = lin(0, 0, c1 * ephi, -std::conj(e1) * s1 * ephi);
  const Linear nu2 = lin(0, 0, e1 * s1, c1);
  const Linear g1 = g1p + nu1, g2 = g2p + nu2;

  Quadratic q{};
  add_product(q, 1.0, f1, nu1);
  add_product(q, 1.0, f2, nu2);
  add_product(q, 0.5, f1, g1p);
  add_product(q, 0.5, f2, g2p);
  add_product(q, eps * th, g1, g2);

  const cd coeff = exp_coefficient(q, {k, l, m, n});
  double fact = 1.0;
  for (int a : {k, l, m, n})
    for (int i = 2; i <= a; ++i) fact *= i;
  return coeff * std::sqrt(fact) / ch;
}

bool self_check() {
  const cd tau1(0.3, 0.2), tau2(0.7, -0.1);
  const cd xi = std::polar(0.25, 0.4);
  const double phi = 0.9;
  const int small = 2, big = 34;
  Eigen::MatrixXcd x = detail::embedded_identity(big, small);
  const int pad = detail::squeeze_padding(big, detail::two_mode_growth(std::abs(xi)));
  detail::left_beam_splitter(tau2, big, x);
  detail::left_two_mode_squeeze(xi, big, pad, x);
  detail::left_phase(phi, Mode::first, big, x);
  detail::left_beam_splitter(tau1, big, x);
  const BasisDescriptor bb(big), sb(small);
  for (int k = 0; k <= small; ++k)
    for (int l = 0; l <= small; ++l)
      for (int m = 0; m <= small; ++m)
        for (int n = 0; n <= small; ++n) {
          const cd ref = x(bb.index(m, n), sb.index(k, l));
          if (std::abs(ref - formula(k, l, m, n, tau1, tau2, xi, phi)) > 1e-9) return false;
        }
  return true;
}

}  // namespace

cd overlap_generating_function(int k, int l, int m, int n, cd tau1, cd tau2, cd xi, double phi) {
  static const bool validated = self_check();
  if (!validated) throw NotDerived("generating-function coefficients failed the self-check");
  if (k < 0 || l < 0 || m < 0 || n < 0) throw ParameterOutOfRange("negative Fock index");
  return formula(k, l, m, n, tau1, tau2, xi, phi);
}

}  // namespace qng
