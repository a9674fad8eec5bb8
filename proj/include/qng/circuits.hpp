#pragma once

#include "qng/fock.hpp"

namespace qng {

// R1(phi1) R2(phi2) U_BS(tau1) R1(phi) S12(xi) U_BS(tau2)
struct EntanglingParams {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double tau1 = 0.0;
  double phi = 0.0;
  double xi = 0.0;
  double tau2 = 0.0;
};

// R1(phi1) U_BS(theta)
struct PassiveParams {
  double phi1 = 0.0;
  double theta = 0.0;
};

// U_BS(tau1) S1(xi1) S2(xi2) U_BS(tau2)
struct BlochMessiahParams {
  cd tau1 = 0.0;
  cd tau2 = 0.0;
  cd xi1 = 0.0;
  cd xi2 = 0.0;
};

void validate(const EntanglingParams& p, double xi_max = kDefaultXiMax);
void validate(const PassiveParams& p);
void validate(const BlochMessiahParams& p, double xi_max = kDefaultXiMax);

TwoModeOperator entangling_unitary(const EntanglingParams& p, BasisDescriptor basis,
                                   double xi_max = kDefaultXiMax);
TwoModeOperator passive_unitary(const PassiveParams& p, BasisDescriptor basis);
TwoModeOperator bloch_messiah_unitary(const BlochMessiahParams& p, BasisDescriptor basis,
                                      double xi_max = kDefaultXiMax);

// Same products applied to a single state on a padded box, without building the operator.
TwoModeState apply_entangling(const EntanglingParams& p, const TwoModeState& s,
                              double xi_max = kDefaultXiMax);
TwoModeState apply_bloch_messiah(const BlochMessiahParams& p, const TwoModeState& s,
                                 double xi_max = kDefaultXiMax);

namespace detail {
// Box margin used when composing squeezers with other factors.
inline int composition_margin(int cutoff) { return cutoff < 20 ? 20 : cutoff; }
}  // namespace detail

}  // namespace qng
