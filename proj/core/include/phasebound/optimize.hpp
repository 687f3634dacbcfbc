#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phasebound/constraint.hpp"
#include "phasebound/eigensolve.hpp"
#include "phasebound/state.hpp"

namespace phasebound {

struct OptimizationResult {
  StateVector state;
  double value;                      // achieved covariant MSE
  std::optional<double> multiplier;  // Lagrange multiplier (avg-square only)
  double constraint_value;           // achieved (N^2)_av or N_max
  int iterations;
  double residual;                   // eigen-residual of the solved system
  bool degenerate;                   // ground eigenspace gap below 1e-10
};

/// Minimum covariant MSE over unit states supported on [-energy, energy]:
/// the ground eigenpair of the kernel matrix on that window. energy = 0
/// degenerates to the vacuum.
OptimizationResult optimize_max_constraint(int energy,
                                           EigenpairMethod method = EigenpairMethod::automatic);

/// Minimum covariant MSE subject to the mean squared photon number at most
/// energy^2, on the truncated window [-truncation, truncation]. Solved by
/// bisection on the multiplier lambda of the penalized ground-state problem
/// (kernel + lambda diag(n^2)); stops when the achieved constraint matches
/// energy^2 to 1e-6 relative (or after 200 bisection steps). truncation = 0
/// selects the default window 8 * ceil(energy). Fails if the constraint is
/// already slack at lambda = 0, which signals a too-small window.
OptimizationResult optimize_avg_constraint(double energy, int truncation = 0,
                                           EigenpairMethod method = EigenpairMethod::automatic);

struct PhaseOptimum {
  std::vector<double> phases;  // aligned with the moduli array
  double value = 0.0;          // covariant MSE at the optimized phases
  bool converged = false;
  double residual = 0.0;       // max |dV/dphi_n| at the returned point
  int iterations = 0;          // total coordinate sweeps across restarts
};

/// Minimizes the covariant MSE over the phases of a state with fixed
/// amplitude moduli (indexed from lo_index). Cyclic coordinate descent with
/// the closed-form single-phase update, best of `restarts` random starts
/// plus the all-zero start. The result is an upper bound on the true phase
/// optimum; it is exact for supports of at most two points.
PhaseOptimum min_phase_mse(std::span<const double> moduli, int lo_index,
                           int restarts = 16, std::uint64_t seed = 0);

/// Worst-case-MSE floor for the noon state over an eps-window:
/// (pi/n * floor(n eps / pi))^2.
double noon_local_minimax_lower(int n, double eps);

/// Discrete decision problem: K candidate phases spaced delta apart, prior
/// probabilities p_i over the true candidate.
struct GridMinimaxInstance {
  int K;
  double delta;
  std::vector<double> probabilities;

  GridMinimaxInstance(int k, double spacing, std::vector<double> p);

  /// Candidate layout induced by a noon state of order n inside an
  /// eps-window: K = floor(n eps / pi), spacing 2 pi / n.
  static GridMinimaxInstance for_noon(int n, double eps);
};

/// Expected squared error when deciding on candidate j (1-based):
/// sum_i p_i delta^2 (j - i)^2.
double grid_minimax_risk(const GridMinimaxInstance& instance, int j);

/// max_j of grid_minimax_risk.
double grid_worst_case(const GridMinimaxInstance& instance);

/// Floor on grid_worst_case valid for every probability vector:
/// delta^2 ((K - 1) / 2)^2.
double grid_worst_case_floor(const GridMinimaxInstance& instance);

/// Half-count variant delta^2 (K / 2)^2, reported alongside the provable
/// floor; the two agree to O(1/K).
double grid_worst_case_half_count(const GridMinimaxInstance& instance);

struct NoonDivergenceRow {
  int n;
  double mse;     // phase-optimized covariant MSE of the noon state
  double scaled;  // n^2 * mse
};

/// Phase-optimized noon MSE across orders; scaled column grows without
/// bound (pi^2/3 n^2 - 1/2).
std::vector<NoonDivergenceRow> noon_divergence_sweep(std::span<const int> n_list,
                                                     int restarts = 16,
                                                     std::uint64_t seed = 0);

}  // namespace phasebound
