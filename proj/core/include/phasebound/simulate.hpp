#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phasebound/state.hpp"
#include "phasebound/util.hpp"

namespace phasebound {

/// Estimate shifted by a multiple of 2pi so the error lands in [-pi, pi):
/// the circular-parameter convention for squared errors.
inline double wrapped_error(double theta_hat, double theta_true) {
  return wrap_angle(theta_hat - theta_true);
}

struct SampleBatch {
  double theta_true = 0.0;
  std::vector<double> estimates;  // i.i.d. draws in [-pi, pi)
  std::uint64_t seed = 0;
  int count() const { return static_cast<int>(estimates.size()); }
};

/// Inverse-CDF sampler for the covariant-measurement outcome distribution of
/// one state. The error density |F^{-1}(a)(u)|^2 / 2pi is tabulated once on a
/// dense uniform grid (at least max(4096, 16 n_max) points) and inverted by
/// monotone linear interpolation; by covariance the same table serves every
/// true phase. Construction rejects grids whose trapezoidal mass drifts from
/// 1 by more than 1e-6.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const StateVector& state);

  /// One error draw u = theta_hat - theta_true.
  double sample_error(class Rng& rng) const;

  /// Reproducible batch: identical (state, theta_true, count, seed) give
  /// bit-identical estimates at any thread count.
  SampleBatch sample(double theta_true, int count, std::uint64_t seed) const;

  int grid_points() const { return static_cast<int>(cdf_.size()) - 1; }

 private:
  std::vector<double> cdf_;  // cumulative trapezoid over the error grid
  double step_;
};

SampleBatch sample_outcomes(const StateVector& state, double theta_true, int count,
                            std::uint64_t seed);

struct MseEstimate {
  double mse = 0.0;
  double std_error = 0.0;
};

/// Mean wrapped-square error of a batch and its standard error.
MseEstimate empirical_mse(const SampleBatch& batch);

struct PlateauRow {
  int n;
  double worst_mse;        // max empirical MSE over the theta grid
  double worst_std_error;  // standard error at the worst grid point
  double lower_bound;      // noon_local_minimax_lower(n, eps)
};

struct PlateauTable {
  std::vector<PlateauRow> rows;
  std::optional<PlateauRow> sine_contrast;  // n carries the sine budget
  bool plateau_regime_reached;              // some n exceeds 2 pi / eps
  double eps;
  double theta0;
};

/// Worst-case empirical MSE of noon states over a grid of true phases inside
/// [theta0 - eps, theta0 + eps], with the 2pi/n-periodic covariant estimate
/// resolved to the candidate branch nearest theta0 (ties toward the smaller
/// candidate). Demonstrates that the worst MSE does not vanish as n grows,
/// in contrast to a full-support sine state over the same phase grid
/// (sine_contrast_energy > 0 adds that row).
PlateauTable noon_plateau_demo(std::span<const int> n_list, double eps, int count,
                               std::uint64_t seed, double theta0 = 0.0,
                               int theta_grid = 33, int sine_contrast_energy = 0);

struct TwoStepReport {
  int energy_stage1 = 0;
  int energy_stage2 = 0;
  MseEstimate two_step;        // sine coarse stage + sine refinement
  MseEstimate two_step_noon;   // refinement replaced by a noon state
  MseEstimate one_shot;        // single sine state at the full budget
  double reference = 0.0;      // pi^2 / 4 / energy_total^2
  bool degenerate_one_shot = false;  // split consumed the whole budget
};

/// Desk-scale two-stage estimation: a sine state at round(split * total)
/// photons gives a coarse phase, a second state spends the remainder and its
/// outcome is resolved into the window centered at the coarse estimate. The
/// noon variant shows how a periodic refinement state degrades the result.
/// True phases are drawn uniformly on [-pi, pi).
TwoStepReport two_step_demo(int energy_total, double split, int trials, std::uint64_t seed);

}  // namespace phasebound
