#pragma once

#include <span>
#include <vector>

#include "phasebound/state.hpp"

namespace phasebound {

/// Lag-k coefficient of the covariant-measurement error form:
/// (1/2pi) Integral_{-pi}^{pi} theta^2 exp(i k theta) dtheta,
/// which evaluates to pi^2/3 at k = 0 and 2 (-1)^k / k^2 for k >= 1.
/// The kernel is even in k.
double kernel_entry(int k);

/// One-sided table of kernel entries for lags 0..max_lag.
class ToeplitzKernel {
 public:
  explicit ToeplitzKernel(int max_lag);

  int max_lag() const { return static_cast<int>(entries_.size()) - 1; }

  /// Entry at lag k, |k| <= max_lag.
  double operator[](int k) const;

  std::span<const double> entries() const { return entries_; }

 private:
  std::vector<double> entries_;
};

/// Mean square error of the canonical covariant measurement applied to
/// `state`: the quadratic form sum_{n,m} conj(a_n) Theta_{n-m} a_m. By
/// covariance the value does not depend on the true phase. Exact up to
/// roundoff; supports up to 2048 coefficients use a direct double loop,
/// larger ones an FFT autocorrelation.
double covariant_mse(const StateVector& state);

/// Independent check of covariant_mse: Gauss-Legendre quadrature of
/// theta^2 times the outcome density, with the density evaluated by direct
/// summation. Requires grid_points >= 4 (n_max + 1) to resolve the highest
/// frequency present.
double quadrature_mse_oracle(const StateVector& state, int grid_points);

/// Probability density of the estimate theta_hat on [-pi, pi) when the true
/// phase is theta_true:
/// (1/2pi) |sum_n a_n exp(i n (theta_true - theta_hat))|^2.
/// Depends only on (theta_true - theta_hat) mod 2pi.
double outcome_density(const StateVector& state, double theta_true, double theta_hat);

/// Outcome density bound to a state and true phase. grid() tabulates the
/// density on the uniform grid theta_j = -pi + 2 pi j / points, which is what
/// the Monte-Carlo sampler consumes.
class OutcomeDensity {
 public:
  OutcomeDensity(StateVector state, double theta_true);

  double operator()(double theta_hat) const;
  std::vector<double> grid(int points) const;

  const StateVector& state() const { return state_; }
  double theta_true() const { return theta_true_; }

 private:
  StateVector state_;
  double theta_true_;
};

namespace detail {

/// Autocorrelation c_k = sum_n conj(a_n) a_{n+k} for k = 0..d-1.
std::vector<Complex> autocorrelation(std::span<const Complex> a, bool use_fft);

/// F^{-1}(a)(theta) = sum_n a_n exp(-i n theta) evaluated by a phase
/// recurrence.
Complex inverse_fourier(const StateVector& state, double theta);

}  // namespace detail

}  // namespace phasebound
