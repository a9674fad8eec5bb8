#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qng::detail {

// Real antisymmetric tridiagonal generator G on a chain 0..L-1 with
// G(j+1, j) = c_j and G(j, j+1) = -c_j.
//
// With D = diag(i^j), D G D^-1 = i T where T is real symmetric tridiagonal
// with off-diagonal c. exp(tG) = D^-1 Q exp(i t Lambda) Q^T D.
class ChainGenerator {
 public:
  explicit ChainGenerator(const std::vector<double>& couplings);

  int size() const { return static_cast<int>(lambda_.size()); }

  // Block [row0, row0+rows) x [col0, col0+cols) of exp(tG). Entries are real.
  Eigen::MatrixXd exp_block(double t, int row0, int rows, int col0, int cols) const;

  // Column-restricted action: y = exp(tG)[0:rows, 0:x.size()] * x.
  Eigen::VectorXcd apply(double t, const Eigen::VectorXcd& x, int rows) const {
    return apply(t, x, 0, rows);
  }
  // y = exp(tG)[row0:row0+rows, 0:x.size()] * x.
  Eigen::VectorXcd apply(double t, const Eigen::VectorXcd& x, int row0, int rows) const;

 private:
  Eigen::MatrixXd q_;
  Eigen::VectorXd lambda_;
};

}  // namespace qng::detail
