#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qng/fock.hpp"

namespace qng {

enum class TargetFamily { fock_pair, noon_like, hybrid1, hybrid2, photon_subtracted };

std::string to_string(TargetFamily f);
// Throws InvalidConfig on an unknown name.
TargetFamily family_from_string(const std::string& name);

struct TargetSpec {
  TargetFamily family = TargetFamily::fock_pair;
  double theta = 0.0;          // radians
  int n = 1;                   // Fock index / NOON half-order
  double alpha = 0.0;          // cat amplitude
  double r = 0.0;              // squeezing parameter of S1 S2
  std::vector<double> phis;    // subtraction-mode angles
  int m = 1;                   // number of subtractions
  std::optional<int> cutoff;   // explicit cutoff; auto-selected when absent
};

// Leakage allowed at an auto-selected cutoff.
inline constexpr double kTargetLeakage = 1e-8;
inline constexpr double kCatTail = 1e-10;
inline constexpr int kMinCatCutoff = 15;

struct CatState {
  Eigen::VectorXd amplitudes;  // single-mode Fock amplitudes 0..cutoff
  double tail = 0.0;           // weight above the cutoff
  bool degenerate = false;     // alpha = 0 odd cat, returned as |1>
};

// Normalized |alpha> + parity |-alpha>, parity = +1 or -1.
CatState cat_state(double alpha, int parity, int cutoff);
// Smallest cutoff with cat tail below kCatTail, at least kMinCatCutoff.
int cat_auto_cutoff(double alpha);

TwoModeState fock_pair(double theta, int n, BasisDescriptor basis);
TwoModeState noon_like(double theta, int n, BasisDescriptor basis);
TwoModeState hybrid(int variant, double theta, double alpha, BasisDescriptor basis);

// Generator coefficients (xi1, xi2) = (r/2, -r/2) of S1(xi1) S2(xi2) for squeezing r.
std::pair<double, double> squeezing_generators(double r);

// prod_k (cos phi_k a1 + sin phi_k a2) S1(xi1) S2(xi2) |0,0>, normalized.
TwoModeState photon_subtracted(int m, const std::vector<double>& phis, double r,
                               BasisDescriptor basis, double xi_max = kDefaultXiMax);
// Finite superposition psi with S1(xi1) S2(xi2) psi = photon_subtracted(m, phis, r).
TwoModeState core_state(int m, const std::vector<double>& phis, double r);

void validate(const TargetSpec& spec);
int auto_cutoff(const TargetSpec& spec);
TwoModeState make_target(const TargetSpec& spec);

// Smallest cutoff keeping all but `weight` of the norm.
int effective_support(const TwoModeState& s, double weight);

}  // namespace qng
