#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "phasebound/eigensolve.hpp"
#include "phasebound/rng.hpp"
#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"

using namespace phasebound;

TEST_CASE("trivial window is the vacuum") {
  const SmallestEigenpair pair = smallest_kernel_eigenpair(0);
  CHECK(pair.value == doctest::Approx(pi * pi / 3.0).epsilon(1e-15));
  CHECK(pair.vector.size() == 1);
  CHECK(pair.vector[0] == doctest::Approx(1.0));
}

TEST_CASE("window E = 1 matches the 3x3 closed-form eigensolve") {
  // Characteristic polynomial of the symmetric block gives
  // pi^2/3 + 1/4 - sqrt(129)/4 with eigenvector (1, t, 1), t the center ratio.
  const double closed = pi * pi / 3.0 + 0.25 - std::sqrt(129.0) / 4.0;
  const SmallestEigenpair pair = smallest_kernel_eigenpair(1);
  CHECK(pair.value == doctest::Approx(closed).epsilon(1e-14));
  CHECK(pair.value == doctest::Approx(0.70041).epsilon(1e-5));
  const double t = pair.vector[1] / pair.vector[0];
  const double t_closed = (pi * pi / 3.0 + 0.5 - closed) / 2.0;
  CHECK(t == doctest::Approx(t_closed).epsilon(1e-12));
  CHECK(t == doctest::Approx(1.5447).epsilon(1e-4));
  CHECK(pair.vector[2] == doctest::Approx(pair.vector[0]).epsilon(1e-12));
}

TEST_CASE("residual and matrix consistency on midsize windows") {
  for (int e : {4, 40, 100}) {
    const SmallestEigenpair pair = smallest_kernel_eigenpair(e);
    const Eigen::MatrixXd a = detail::kernel_matrix(e);
    const Eigen::VectorXd r = a * pair.vector - pair.value * pair.vector;
    CHECK(r.norm() < 1e-9);
    CHECK(pair.residual < 1e-9);
    CHECK(std::abs(pair.vector.norm() - 1.0) < 1e-12);
    CHECK_FALSE(pair.degenerate);
    CHECK(pair.gap > 0.0);
    // Ground vector of these windows is even and positive at the center.
    CHECK(pair.vector[e] > 0.0);
    for (int i = 0; i <= e; ++i) {
      CHECK(pair.vector[e + i] == doctest::Approx(pair.vector[e - i]).epsilon(1e-7));
    }
  }
}

TEST_CASE("penalized ground state matches a dense reference") {
  Rng rng(derive_stream(7, "eigensolve_penalized"));
  for (int trial = 0; trial < 4; ++trial) {
    const int e = 20 + static_cast<int>(rng.next_u64() % 60);
    const double lambda = std::pow(10.0, rng.uniform(-6.0, -1.0));
    const SmallestEigenpair pair = smallest_kernel_eigenpair(e, lambda);
    const Eigen::MatrixXd a = detail::kernel_matrix(e, lambda);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    CHECK(pair.value == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-11));
    CHECK((a * pair.vector - pair.value * pair.vector).norm() < 1e-9);
  }
}

TEST_CASE("FFT matvec agrees with the dense matrix") {
  Rng rng(derive_stream(13, "eigensolve_matvec"));
  for (int e : {5, 33, 257}) {
    const int dim = 2 * e + 1;
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x[i] = rng.uniform(-1.0, 1.0);
    const double lambda = 1e-4;
    const Eigen::VectorXd direct = detail::kernel_matrix(e, lambda) * x;
    const Eigen::VectorXd fast = detail::kernel_matvec_fft(e, lambda, x);
    CHECK((direct - fast).norm() < 1e-11 * direct.norm() + 1e-13);
  }
}

TEST_CASE("iterative path reproduces the dense path") {
  // Same window solved both ways, straddling the automatic threshold.
  for (double lambda : {0.0, 3e-7}) {
    const SmallestEigenpair dense =
        smallest_kernel_eigenpair(1100, lambda, EigenpairMethod::dense);
    const SmallestEigenpair iterative =
        smallest_kernel_eigenpair(1100, lambda, EigenpairMethod::iterative);
    CHECK(iterative.value == doctest::Approx(dense.value).epsilon(1e-10));
    CHECK(iterative.residual < 1e-9);
    const double overlap = std::abs(dense.vector.dot(iterative.vector));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("large window runs through the iterative path") {
  // dim = 2*2100+1 = 4201 exceeds the dense limit; the scaled value sits
  // near the continuum limit pi^2/4.
  const SmallestEigenpair pair = smallest_kernel_eigenpair(2100);
  const double scaled = 2100.0 * 2100.0 * pair.value;
  CHECK(scaled > 2.40);
  CHECK(scaled < pi * pi / 4.0);
  CHECK(pair.residual < 1e-9);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(smallest_kernel_eigenpair(-1), std::invalid_argument);
  CHECK_THROWS_AS(smallest_kernel_eigenpair(4, -0.5), std::invalid_argument);
}
