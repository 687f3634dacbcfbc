#pragma once

#include <stdexcept>

namespace phasebound {

enum class ConstraintKind {
  avg_square,  // mean squared photon number at most budget^2
  max_photon,  // largest occupied photon number at most budget
};

/// Photon-number resource constraint. The max-photon budget is integral.
struct Constraint {
  ConstraintKind kind;
  double budget;

  static Constraint avg_square(double e) {
    if (!(e > 0.0)) throw std::invalid_argument("constraint budget must be positive");
    return {ConstraintKind::avg_square, e};
  }
  static Constraint max_photon(int e) {
    if (e < 1) throw std::invalid_argument("max-photon budget must be a positive integer");
    return {ConstraintKind::max_photon, static_cast<double>(e)};
  }
};

}  // namespace phasebound
