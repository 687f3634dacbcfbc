#pragma once

#include "phasebound/constraint.hpp"
#include "phasebound/state.hpp"

namespace phasebound {

struct FisherResult {
  double information;  // SLD Fisher information; 4x the index variance
  double cr_bound;     // 1 / information; +infinity when information is 0
};

/// SLD Fisher information of the phase-evolved state. The phase generator is
/// diagonal in the index basis, so the information reduces to four times the
/// variance of the index under |a_n|^2 and is independent of the true phase.
FisherResult sld_fisher(const StateVector& state);

/// Optimal MSE under the locally-unbiased criterion for either constraint at
/// budget E: 1 / (4 E^2), attained by the noon state of order E. Requires
/// E >= 1 (integral for the max-photon constraint by construction).
double lub_bound(const Constraint& constraint);

}  // namespace phasebound
