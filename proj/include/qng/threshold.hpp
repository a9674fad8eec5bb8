#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qng/circuits.hpp"
#include "qng/cmaes.hpp"
#include "qng/fock.hpp"

namespace qng {

enum class ThresholdKind { passive, gaussian };
std::string to_string(ThresholdKind k);

struct CutoffStep {
  int cutoff = 0;  // input cutoff n
  double value = 0.0;
  long evaluations = 0;
  std::vector<double> restart_best;  // Gaussian only
  std::string stop_reason;           // of the restart that produced `value`
};

struct ThresholdResult {
  ThresholdKind kind = ThresholdKind::passive;
  double value = 0.0;
  std::variant<PassiveParams, EntanglingParams> best_params;
  // Product input a (x) b maximizing the fidelity with best_params.
  std::pair<Eigen::VectorXcd, Eigen::VectorXcd> best_input;
  std::vector<CutoffStep> cutoff_trace;
  bool converged = true;
  long evaluations = 0;
};

struct CertificationVerdict {
  double fidelity = 0.0;
  ThresholdResult threshold;
  bool certified = false;
  double margin = 0.0;
};

struct InnerMax {
  double value = 0.0;
  Eigen::VectorXcd u;  // left singular vector
  Eigen::VectorXcd v;  // right singular vector
};

struct GridConfig {
  int phi_steps = 401;    // over [0, 2 pi)
  int theta_steps = 401;  // over [0, pi/2]
  double refine_tol = 1e-10;
  int input_cutoff = -1;  // -1: target cutoff
  int jobs = 1;

  void validate() const;
};

struct EscalationConfig {
  int start_cutoff = -1;  // -1: max(support + 5, 15)
  int step = 5;
  int max_cutoff = 35;
  double tol = 1e-4;
  double support_weight = 1e-6;  // weight defining the target support

  void validate() const;
};

// Leakage above which a passive threshold is not trusted.
inline constexpr double kMaxThresholdLeakage = 1e-4;

// M(k, l) = <target| U |k, l>, k, l <= input_cutoff
Eigen::MatrixXcd overlap_matrix(const TwoModeState& target, const TwoModeOperator& u, int input_cutoff);

// sigma_max(M)^2 with singular vectors; value = |u^dag M v|^2.
InnerMax inner_max(const Eigen::MatrixXcd& m);

ThresholdResult passive_threshold(const TwoModeState& target, const GridConfig& grid = {});

// Defaults applied when `opt` leaves them unset: dim 6, 11 restarts.
CmaesConfig default_gaussian_optimizer();

ThresholdResult gaussian_threshold(const TwoModeState& target, const CmaesConfig& opt = default_gaussian_optimizer(),
                                   const EscalationConfig& esc = {}, double xi_max = kDefaultXiMax);

// Gaussian objective at a single input cutoff; used by gaussian_threshold and tests.
ThresholdResult gaussian_threshold_at(const TwoModeState& target, int input_cutoff, const CmaesConfig& opt,
                                      double xi_max = kDefaultXiMax, const Eigen::VectorXd& z0 = {});

// Search-space maps for (phi1, phi2, tau1, phi, xi, tau2).
std::vector<CoordinateMap> entangling_maps(double xi_max = kDefaultXiMax);
EntanglingParams entangling_from_vector(const Eigen::VectorXd& x);

CertificationVerdict certify(double fidelity, const ThresholdResult& threshold);

}  // namespace qng
