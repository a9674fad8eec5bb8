#include "qng/detail/chain_generator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qng::detail {

ChainGenerator::ChainGenerator(const std::vector<double>& couplings) {
  const int n = static_cast<int>(couplings.size()) + 1;
  if (n == 1) {
    q_ = Eigen::MatrixXd::Identity(1, 1);
    lambda_ = Eigen::VectorXd::Zero(1);
    return;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int j = 0; j < n - 1; ++j) sub(j) = couplings[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  q_ = es.eigenvectors();
  lambda_ = es.eigenvalues();
}

Eigen::MatrixXd ChainGenerator::exp_block(double t, int row0, int rows, int col0, int cols) const {
  const int n = size();
  Eigen::VectorXd c(n), s(n);
  for (int m = 0; m < n; ++m) {
    c(m) = std::cos(t * lambda_(m));
    s(m) = std::sin(t * lambda_(m));
  }
  const auto qr = q_.middleRows(row0, rows);
  const auto qc = q_.middleRows(col0, cols);
  Eigen::MatrixXd cm = qr * c.asDiagonal() * qc.transpose();
  Eigen::MatrixXd sm = qr * s.asDiagonal() * qc.transpose();
  // E_ab = Re(i^(b-a) (C + iS)_ab)
  Eigen::MatrixXd e(rows, cols);
  for (int b = 0; b < cols; ++b) {
    for (int a = 0; a < rows; ++a) {
      switch ((((col0 + b) - (row0 + a)) % 4 + 4) % 4) {
        case 0: e(a, b) = cm(a, b); break;
        case 1: e(a, b) = -sm(a, b); break;
        case 2: e(a, b) = -cm(a, b); break;
        default: e(a, b) = sm(a, b); break;
      }
    }
  }
  return e;
}

Eigen::VectorXcd ChainGenerator::apply(double t, const Eigen::VectorXcd& x, int row0, int rows) const {
  const int n = size();
  const int cols = static_cast<int>(x.size());
  // D x with D = diag(i^b), split into real and imaginary parts.
  Eigen::VectorXd xr(cols), xi(cols);
  for (int b = 0; b < cols; ++b) {
    const double re = x(b).real(), im = x(b).imag();
    switch (b % 4) {
      case 0: xr(b) = re; xi(b) = im; break;
      case 1: xr(b) = -im; xi(b) = re; break;
      case 2: xr(b) = -re; xi(b) = -im; break;
      default: xr(b) = im; xi(b) = -re; break;
    }
  }
  const auto qc = q_.topRows(cols);
  Eigen::VectorXd ur = qc.transpose() * xr, ui = qc.transpose() * xi;
  for (int m = 0; m < n; ++m) {
    const double c = std::cos(t * lambda_(m)), s = std::sin(t * lambda_(m));
    const double re = c * ur(m) - s * ui(m);
    ui(m) = s * ur(m) + c * ui(m);
    ur(m) = re;
  }
  const auto qr = q_.middleRows(row0, rows);
  const Eigen::VectorXd yr = qr * ur, yi = qr * ui;
  // D^-1 y
  Eigen::VectorXcd y(rows);
  for (int a = 0; a < rows; ++a) {
    switch ((row0 + a) % 4) {
      case 0: y(a) = {yr(a), yi(a)}; break;
      case 1: y(a) = {yi(a), -yr(a)}; break;
      case 2: y(a) = {-yr(a), -yi(a)}; break;
      default: y(a) = {-yi(a), yr(a)}; break;
    }
  }
  return y;
}

}  // namespace qng::detail
