#pragma once

#include <Eigen/Dense>

namespace phasebound {

enum class EigenpairMethod {
  automatic,  // dense up to 2049 coefficients, iterative beyond
  dense,
  iterative,
};

struct SmallestEigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;  // unit norm, entry for index n at position n + half_width
  double residual = 0.0;   // ||A v - value v||
  int iterations = 0;
  double gap = 0.0;        // distance to the second eigenvalue
  bool degenerate = false; // gap below 1e-10
};

/// Ground eigenpair of the covariant-MSE kernel matrix restricted to indices
/// [-half_width, half_width], plus an optional diagonal photon penalty
/// lambda n^2. The matrix is symmetric positive definite (its symbol is
/// theta^2 >= 0 plus a nonnegative diagonal).
///
/// Dense windows use a Cholesky-backed inverse iteration. Larger windows use
/// the same iteration with conjugate-gradient solves: matrix-vector products
/// run through an FFT embedding of the Toeplitz part, preconditioned by the
/// second-difference tridiagonal matrix, whose symbol 2 - 2 cos(theta)
/// brackets theta^2 within a factor pi^2/4 on [-pi, pi]. That caps the
/// preconditioned condition number at pi^2/4 independent of the window size.
SmallestEigenpair smallest_kernel_eigenpair(
    int half_width, double lambda = 0.0,
    EigenpairMethod method = EigenpairMethod::automatic);

namespace detail {

/// y = (Theta + lambda diag(n^2)) x on indices [-half_width, half_width],
/// computed by FFT circular embedding; O(d log d).
Eigen::VectorXd kernel_matvec_fft(int half_width, double lambda,
                                  const Eigen::VectorXd& x);

/// Dense kernel matrix (for tests and small windows).
Eigen::MatrixXd kernel_matrix(int half_width, double lambda = 0.0);

}  // namespace detail

}  // namespace phasebound
