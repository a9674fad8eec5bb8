#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qng/circuits.hpp"
#include "qng/detail/chain_generator.hpp"
#include "qng/fock.hpp"

namespace qng::detail {

// Computes M = conj(U^dag psi) restricted to an input box, where psi is a fixed
// target. Vectors live on the total-photon-number triangle N <= 2*max(c_t, n),
// where beam splitters and phases act exactly; two-mode squeezing uses the
// normal-ordered closed form on each k-l chain, so no padding is needed.
class TriangleEvaluator {
 public:
  TriangleEvaluator(const TwoModeState& target, int input_cutoff);

  int input_cutoff() const { return n_; }
  int target_cutoff() const { return ct_; }

  // M(k, l) = <psi| U |k, l>, k, l <= input_cutoff
  Eigen::MatrixXcd overlap(const EntanglingParams& p) const;
  Eigen::MatrixXcd overlap(const PassiveParams& p) const;

  // sigma_max(M)^2
  double value(const EntanglingParams& p) const;
  double value(const PassiveParams& p) const;

  // Passive family at fixed theta: M(phi1) = sum_k exp(i k phi1) parts[k].
  std::vector<Eigen::MatrixXcd> passive_parts(double theta) const;

 private:
  using Blocks = std::vector<Eigen::VectorXcd>;  // blocks[N](k) = amplitude of |k, N-k>

  // box_rows keeps only rows inside the input box (zeros elsewhere).
  void beam_splitter(double t, Blocks& x, bool box_rows) const;
  Blocks two_mode_squeeze(double xi, const Blocks& x) const;
  Eigen::MatrixXcd box(const Blocks& x) const;

  int ct_ = 0;
  int n_ = 0;
  Blocks target_;
  // Beam-splitter generator of each block N; independent of the angle.
  std::vector<ChainGenerator> chains_;
};

double top_singular_value_squared(const Eigen::MatrixXcd& m);
// Lower estimate from `steps` Lanczos iterations on M^dag M.
double top_singular_value_squared_estimate(const Eigen::MatrixXcd& m, int steps);

}  // namespace qng::detail
