#include "qng/circuits.hpp"

#include <cmath>
#include <string>

namespace qng {

namespace {

bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Runs `left` on columns embedded into a padded box and crops back.
template <class F>
Eigen::MatrixXcd padded(const Eigen::MatrixXcd& cols, int cutoff, F&& left) {
  const int big = cutoff + detail::composition_margin(cutoff);
  const BasisDescriptor bb(big), sb(cutoff);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(bb.size(), cols.cols());
  for (int k = 0; k <= cutoff; ++k)
    for (int l = 0; l <= cutoff; ++l) x.row(bb.index(k, l)) = cols.row(sb.index(k, l));
  left(big, x);
  return detail::crop_rows(x, big, cutoff);
}

void left_entangling(const EntanglingParams& p, int big, Eigen::MatrixXcd& x) {
  detail::left_beam_splitter(p.tau2, big, x);
  detail::left_two_mode_squeeze(p.xi, big,
                                detail::squeeze_padding(big, detail::two_mode_growth(p.xi)), x);
  detail::left_phase(p.phi, Mode::first, big, x);
  detail::left_beam_splitter(p.tau1, big, x);
  detail::left_phase(p.phi2, Mode::second, big, x);
  detail::left_phase(p.phi1, Mode::first, big, x);
}

void left_bloch_messiah(const BlochMessiahParams& p, int big, Eigen::MatrixXcd& x) {
  detail::left_beam_splitter(p.tau2, big, x);
  detail::left_single_mode_squeeze(
      p.xi2, Mode::second, big,
      detail::squeeze_padding(big, detail::single_mode_growth(std::abs(p.xi2))), x);
  detail::left_single_mode_squeeze(
      p.xi1, Mode::first, big,
      detail::squeeze_padding(big, detail::single_mode_growth(std::abs(p.xi1))), x);
  detail::left_beam_splitter(p.tau1, big, x);
}

}  // namespace

void validate(const EntanglingParams& p, double xi_max) {
  for (double v : {p.phi1, p.phi2, p.tau1, p.phi, p.xi, p.tau2})
    if (!std::isfinite(v)) throw ParameterOutOfRange("entangling parameters must be finite");
  if (p.xi < 0.0 || p.xi > xi_max)
    throw ParameterOutOfRange("xi = " + std::to_string(p.xi) + " outside [0, xi_max]");
}

void validate(const PassiveParams& p) {
  if (!std::isfinite(p.phi1) || !std::isfinite(p.theta))
    throw ParameterOutOfRange("passive parameters must be finite");
}

void validate(const BlochMessiahParams& p, double xi_max) {
  if (!finite(p.tau1) || !finite(p.tau2) || !finite(p.xi1) || !finite(p.xi2))
    throw ParameterOutOfRange("Bloch-Messiah parameters must be finite");
  if (std::abs(p.xi1) > xi_max || std::abs(p.xi2) > xi_max)
    throw ParameterOutOfRange("single-mode squeezing exceeds xi_max");
}

TwoModeOperator entangling_unitary(const EntanglingParams& p, BasisDescriptor basis,
                                   double xi_max) {
  validate(p, xi_max);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  if (p.xi == 0.0) {
    // Number conserving: the box is closed under every factor.
    left_entangling(p, basis.cutoff, id);
    return TwoModeOperator(basis, std::move(id));
  }
  return TwoModeOperator(
      basis, padded(id, basis.cutoff, [&](int big, Eigen::MatrixXcd& x) { left_entangling(p, big, x); }));
}

TwoModeOperator passive_unitary(const PassiveParams& p, BasisDescriptor basis) {
  validate(p);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  detail::left_beam_splitter(p.theta, basis.cutoff, x);
  detail::left_phase(p.phi1, Mode::first, basis.cutoff, x);
  return TwoModeOperator(basis, std::move(x));
}

TwoModeOperator bloch_messiah_unitary(const BlochMessiahParams& p, BasisDescriptor basis,
                                      double xi_max) {
  validate(p, xi_max);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(basis.size(), basis.size());
  return TwoModeOperator(basis, padded(id, basis.cutoff, [&](int big, Eigen::MatrixXcd& x) {
                           left_bloch_messiah(p, big, x);
                         }));
}

TwoModeState apply_entangling(const EntanglingParams& p, const TwoModeState& s, double xi_max) {
  validate(p, xi_max);
  Eigen::MatrixXcd v = padded(s.amplitudes(), s.basis().cutoff,
                              [&](int big, Eigen::MatrixXcd& x) { left_entangling(p, big, x); });
  const double lost = std::max(0.0, s.norm_squared() - v.squaredNorm());
  return TwoModeState(s.basis(), v.col(0), s.leakage() + lost);
}

TwoModeState apply_bloch_messiah(const BlochMessiahParams& p, const TwoModeState& s,
                                 double xi_max) {
  validate(p, xi_max);
  Eigen::MatrixXcd v = padded(s.amplitudes(), s.basis().cutoff,
                              [&](int big, Eigen::MatrixXcd& x) { left_bloch_messiah(p, big, x); });
  const double lost = std::max(0.0, s.norm_squared() - v.squaredNorm());
  return TwoModeState(s.basis(), v.col(0), s.leakage() + lost);
}

}  // namespace qng
