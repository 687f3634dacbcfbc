#pragma once

#include <functional>
#include <span>
#include <vector>

#include "phasebound/state.hpp"

namespace phasebound {

/// Complex function on a uniform grid over [x_lo, x_hi], unit-normalized in
/// the trapezoidal L2 inner product. x is the rescaled photon index n / E.
class ContinuumFunction {
 public:
  static ContinuumFunction from_callable(const std::function<Complex(double)>& f,
                                         double x_lo, double x_hi, int points);
  static ContinuumFunction from_samples(double x_lo, double x_hi,
                                        std::vector<Complex> samples);

  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double step() const { return (x_hi_ - x_lo_) / (size() - 1); }
  std::span<const Complex> samples() const { return samples_; }
  double node(int i) const { return x_lo_ + step() * i; }

  /// Linear interpolation; zero outside the domain.
  Complex interpolate(double x) const;

 private:
  ContinuumFunction(double x_lo, double x_hi, std::vector<Complex> samples);

  double x_lo_;
  double x_hi_;
  std::vector<Complex> samples_;
};

/// <Q^2>: trapezoidal integral of x^2 |f|^2.
double q2_expectation(const ContinuumFunction& f);

/// <P^2>: trapezoidal integral of |f'|^2, with fourth-order difference
/// stencils (one-sided at the boundary).
double p2_expectation(const ContinuumFunction& f);

struct DirichletGroundState {
  double eigenvalue;
  ContinuumFunction eigenfunction;  // boundary samples exactly zero
};

/// Smallest eigenpair of the three-point Dirichlet Laplacian -d^2/dx^2 on
/// [-1, 1] with `points` total grid nodes (boundaries included). The discrete
/// eigenvalue is (2/h^2)(1 - cos(pi h / 2)) exactly and converges to pi^2/4
/// at O(h^2).
DirichletGroundState dirichlet_ground_state(int points);

struct UncertaintyCheck {
  double q2;       // variance of Q (mean-centered)
  double p2;       // variance of P
  double product;
  bool ok;         // product >= 1/4 - 1e-6
};

/// Position-momentum uncertainty product of f. Requires |f| < 1e-8 at the
/// domain endpoints so the derivative quadrature is valid.
UncertaintyCheck uncertainty_check(const ContinuumFunction& f);

/// Discretizes the profile at x = n / energy on the function's domain; see
/// the callable overload in state.hpp.
StateVector from_continuum(const ContinuumFunction& f, double energy);

struct ScalingRow {
  double energy;
  double scaled_mse;  // energy^2 * covariant_mse(from_continuum(f, energy))
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  double limit;               // p2_expectation of the profile
  double final_relative_gap;  // |last scaled_mse / limit - 1|
  bool monotone_after_first;  // diagnostic only
};

/// Convergence of the rescaled covariant MSE toward <P^2> as the photon
/// budget grows. Requires a real profile.
ScalingTable scaling_convergence(const ContinuumFunction& f, std::span<const double> energies);

}  // namespace phasebound
