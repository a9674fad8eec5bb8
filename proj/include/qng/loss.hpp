#pragma once

#include <utility>
#include <vector>

#include "qng/fock.hpp"
#include "qng/threshold.hpp"

namespace qng {

// Leakage allowed on states sent through the loss channel.
inline constexpr double kLossMaxLeakage = 1e-8;

struct TwoModeDensity {
  BasisDescriptor basis;
  Eigen::MatrixXcd rho;  // flat index k*dim + l on both sides
  double trace_defect = 0.0;
};

struct LossResult {
  double eta_min = 1.0;
  ThresholdResult threshold_used;
  std::vector<std::pair<double, double>> fidelity_curve;  // (eta, fidelity) on the check grid
  bool monotone_verified = false;
  bool no_margin = false;  // threshold >= 1: no loss is tolerated
};

// Single-mode pure-loss Kraus operator A_j on {0..cutoff}:
// A_j |n> = sqrt(C(n, j)) eta^((n-j)/2) (1-eta)^(j/2) |n-j>.
Eigen::MatrixXd loss_kraus(int j, double eta, int cutoff);

// Equal transmission eta on both modes.
TwoModeDensity pure_loss(const TwoModeState& state, double eta);

// The same channel applied to a density matrix.
TwoModeDensity pure_loss(const TwoModeDensity& rho, double eta);

// <target| rho |target>
double fidelity_to_pure(const TwoModeState& target, const TwoModeDensity& rho);

// fidelity_to_pure(target, pure_loss(target, eta)) without forming rho.
double loss_fidelity(const TwoModeState& target, double eta);

struct LossConfig {
  double tol = 1e-4;
  int grid_points = 21;
  int jobs = 1;
};

// Smallest eta with F(eta) >= threshold.value, F(eta) = loss_fidelity(target, eta).
LossResult min_transmission(const TwoModeState& target, const ThresholdResult& threshold,
                            const LossConfig& config = {});

}  // namespace qng
