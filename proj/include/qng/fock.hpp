#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qng/errors.hpp"

namespace qng {

using cd = std::complex<double>;

inline constexpr double kDefaultXiMax = 3.0;
inline constexpr double kTruncationWarningDefect = 1e-6;
// Columns whose image leaks less than this are "interior".
inline constexpr double kInteriorLeakage = 1e-12;

enum class Mode { first = 1, second = 2 };

Mode mode_from_int(int m);

struct BasisDescriptor {
  int cutoff = 0;

  BasisDescriptor() = default;
  explicit BasisDescriptor(int c);

  int dim() const { return cutoff + 1; }
  int size() const { return dim() * dim(); }
  int index(int k, int l) const { return k * dim() + l; }
  std::pair<int, int> pair(int flat) const { return {flat / dim(), flat % dim()}; }

  bool operator==(const BasisDescriptor&) const = default;
};

// Amplitudes of |k>_1 |l>_2 at flat index k*dim + l. leakage is the norm^2
// estimated to lie above the cutoff, in the same units as the amplitudes.
class TwoModeState {
 public:
  TwoModeState(BasisDescriptor basis, Eigen::VectorXcd amp, double leakage = 0.0);

  static TwoModeState basis_state(BasisDescriptor basis, int k, int l);
  // coeffs(k, l) -> amplitude of |k, l>
  static TwoModeState from_matrix(const Eigen::MatrixXcd& coeffs, double leakage = 0.0);

  const BasisDescriptor& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  double leakage() const { return leakage_; }

  cd amplitude(int k, int l) const;
  double norm_squared() const { return amp_.squaredNorm(); }
  // Scales so that in-box weight + leakage = 1.
  TwoModeState normalized() const;
  Eigen::MatrixXcd as_matrix() const;
  TwoModeState swapped_modes() const;
  // Embeds into a larger box or crops to a smaller one (cropped weight goes to leakage).
  TwoModeState with_cutoff(int cutoff) const;

 private:
  BasisDescriptor basis_;
  Eigen::VectorXcd amp_;
  double leakage_ = 0.0;
};

class TwoModeOperator {
 public:
  TwoModeOperator(BasisDescriptor basis, Eigen::MatrixXcd mat);

  static TwoModeOperator identity(BasisDescriptor basis);

  const BasisDescriptor& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  double unitarity_defect() const { return defect_; }
  double column_leakage(int j) const { return col_leak_[j]; }
  bool truncation_warning() const { return defect_ > kTruncationWarningDefect; }

  // <m, n| U |k, l>
  cd element(int m, int n, int k, int l) const;
  TwoModeOperator adjoint() const;

 private:
  BasisDescriptor basis_;
  Eigen::MatrixXcd mat_;
  Eigen::VectorXd col_leak_;
  double defect_ = 0.0;
};

// exp(tau a1^dag a2 - tau^* a1 a2^dag)
TwoModeOperator beam_splitter(cd tau, BasisDescriptor basis);
// exp(i phi n_mode)
TwoModeOperator phase_shift(double phi, Mode mode, BasisDescriptor basis);
// exp(xi a^dag^2 - xi^* a^2) on one mode
TwoModeOperator single_mode_squeeze(cd xi, Mode mode, BasisDescriptor basis,
                                    double xi_max = kDefaultXiMax);
// exp(xi a1^dag a2^dag - xi^* a1 a2)
TwoModeOperator two_mode_squeeze(cd xi, BasisDescriptor basis, double xi_max = kDefaultXiMax);

TwoModeState annihilate(Mode mode, const TwoModeState& state);
TwoModeState apply(const TwoModeOperator& op, const TwoModeState& state);
// a * b
TwoModeOperator compose(const TwoModeOperator& a, const TwoModeOperator& b);
// <a|b>
cd inner(const TwoModeState& a, const TwoModeState& b);

// <m, n| U(tau1) R1(phi) S12(xi) U(tau2) |k, l> from the closed-form generating
// function. Throws NotDerived if the formula fails its self-check against
// truncated matrix products.
cd overlap_generating_function(int k, int l, int m, int n, cd tau1, cd tau2, cd xi, double phi);

namespace detail {

// Structured left multiplications X <- F X, rows of X indexed by flat index at
// `cutoff`. Squeezing chains are exponentiated on `pad` extra photons and
// compressed back.
void left_phase(double phi, Mode mode, int cutoff, Eigen::MatrixXcd& x);
void left_beam_splitter(cd tau, int cutoff, Eigen::MatrixXcd& x);
void left_two_mode_squeeze(cd xi, int cutoff, int pad, Eigen::MatrixXcd& x);
void left_single_mode_squeeze(cd xi, Mode mode, int cutoff, int pad, Eigen::MatrixXcd& x);

// Columns: basis states of the small box embedded in the big box.
Eigen::MatrixXcd embedded_identity(int big_cutoff, int cutoff);
Eigen::MatrixXcd crop_rows(const Eigen::MatrixXcd& x, int big_cutoff, int cutoff);

// Extra chain length so that columns up to `cutoff` are exact after compression;
// `growth` is the photon-number amplification factor of the squeezer.
int squeeze_padding(int cutoff, double growth);
inline double single_mode_growth(double r) { return std::cosh(4 * r); }
inline double two_mode_growth(double r) { return std::cosh(2 * r); }

}  // namespace detail

}  // namespace qng
