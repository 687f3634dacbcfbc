#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "phasebound/quadrature.hpp"
#include "phasebound/rng.hpp"
#include "phasebound/state.hpp"
#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"

using namespace phasebound;

namespace {

// Independent quadrature oracle for the kernel itself:
// (1/2pi) Integral theta^2 cos(k theta) dtheta by Gauss-Legendre.
double kernel_quadrature(int k, int points = 2048) {
  const QuadratureRule& rule = gauss_legendre(points, -pi, pi);
  KahanSum s;
  for (int i = 0; i < points; ++i) {
    const double t = rule.nodes[static_cast<std::size_t>(i)];
    s.add(rule.weights[static_cast<std::size_t>(i)] * t * t * std::cos(k * t));
  }
  return s.value() / two_pi;
}

StateVector random_state(Rng& rng, int max_half_width) {
  const int lo = -static_cast<int>(rng.next_u64() % (max_half_width + 1));
  int hi = static_cast<int>(rng.next_u64() % (max_half_width + 1));
  if (lo == 0 && hi == 0) hi = 1;
  std::vector<Complex> a(static_cast<std::size_t>(hi - lo + 1));
  for (Complex& z : a) z = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return StateVector::normalized(lo, hi, std::move(a));
}

const StateVector kVacuum(0, 0, {Complex{1.0, 0.0}});

}  // namespace

TEST_CASE("kernel entries: closed form vs quadrature oracle") {
  CHECK(kernel_entry(0) == doctest::Approx(pi * pi / 3.0).epsilon(1e-15));
  CHECK(kernel_entry(0) == doctest::Approx(3.2898681).epsilon(1e-7));
  CHECK(kernel_entry(1) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(kernel_entry(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kernel_entry(3) == doctest::Approx(-2.0 / 9.0).epsilon(1e-15));

  for (int k = 0; k <= 64; ++k) {
    CHECK(std::abs(kernel_entry(k) - kernel_quadrature(k)) < 1e-10);
    CHECK(kernel_entry(-k) == kernel_entry(k));
  }
}

TEST_CASE("kernel table") {
  const ToeplitzKernel kernel(16);
  CHECK(kernel.max_lag() == 16);
  CHECK(kernel[0] == kernel_entry(0));
  CHECK(kernel[-7] == kernel_entry(7));
  CHECK_THROWS_AS(kernel[17], std::out_of_range);
  CHECK_THROWS_AS(ToeplitzKernel(-1), std::invalid_argument);
}

TEST_CASE("covariant mse closed-form examples") {
  CHECK(covariant_mse(kVacuum) == doctest::Approx(pi * pi / 3.0).epsilon(1e-14));

  // noon n = 1, zero phases: pi^2/3 + 2 (1/2) Theta_2.
  CHECK(covariant_mse(build_noon(1)) ==
        doctest::Approx(pi * pi / 3.0 + 0.5).epsilon(1e-14));
  CHECK(covariant_mse(build_noon(1)) == doctest::Approx(3.7899).epsilon(1e-4));

  const double w = 1.0 / std::sqrt(2.0);
  const StateVector half(0, 1, {Complex{w, 0.0}, Complex{w, 0.0}});
  CHECK(covariant_mse(half) == doctest::Approx(pi * pi / 3.0 - 2.0).epsilon(1e-14));
  CHECK(covariant_mse(half) == doctest::Approx(1.2899).epsilon(1e-4));
}

TEST_CASE("quadrature oracle examples") {
  CHECK(std::abs(quadrature_mse_oracle(kVacuum, 1024) - pi * pi / 3.0) < 1e-6);

  Rng rng(derive_stream(5, "toeplitz_oracle"));
  const StateVector s = random_state(rng, 32);
  CHECK(std::abs(covariant_mse(s) - quadrature_mse_oracle(s, 4096)) < 1e-8);

  // noon n = 8: two-point cross term Theta_16 = 1/128.
  CHECK(std::abs(quadrature_mse_oracle(build_noon(8), 4096) -
                 (pi * pi / 3.0 + 1.0 / 128.0)) < 1e-10);

  CHECK_THROWS_AS(quadrature_mse_oracle(build_noon(8), 32), std::invalid_argument);
}

TEST_CASE("oracle equivalence on random states") {
  Rng rng(derive_stream(17, "toeplitz_property"));
  for (int t = 0; t < 40; ++t) {
    const StateVector s = random_state(rng, 64);
    const double closed = covariant_mse(s);
    const double quad = quadrature_mse_oracle(s, 4096);
    CHECK(std::abs(closed - quad) < 1e-8);
    CHECK(closed > 0.0);
    CHECK(closed <= pi * pi + 1e-12);
  }
}

TEST_CASE("single-index states always give pi^2/3") {
  for (int n : {-9, -1, 0, 2, 31}) {
    const int lo = std::min(n, 0), hi = std::max(n, 0);
    std::vector<Complex> a(static_cast<std::size_t>(hi - lo + 1), Complex{0.0, 0.0});
    a[static_cast<std::size_t>(n - lo)] = std::polar(1.0, 0.37 * n);  // phase irrelevant
    const StateVector s(lo, hi, std::move(a));
    CHECK(covariant_mse(s) == doctest::Approx(pi * pi / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("direct and FFT autocorrelation agree") {
  Rng rng(derive_stream(23, "toeplitz_fft"));
  for (int size : {3, 17, 256, 1031}) {
    std::vector<Complex> a(static_cast<std::size_t>(size));
    for (Complex& z : a) z = Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto direct = detail::autocorrelation(a, false);
    const auto fft = detail::autocorrelation(a, true);
    for (int k = 0; k < size; ++k) {
      CHECK(std::abs(direct[static_cast<std::size_t>(k)] - fft[static_cast<std::size_t>(k)]) <
            1e-11 * size);
    }
  }
}

TEST_CASE("covariant mse large-support path matches the oracle") {
  // Support above 2048 forces the FFT branch.
  const GaussianBuild g = build_gaussian(300.0, 8.0);
  REQUIRE(g.state.support_size() > 2048);
  const double closed = covariant_mse(g.state);
  const double quad = quadrature_mse_oracle(g.state, 4 * (metrics(g.state).n_max + 1));
  CHECK(std::abs(closed - quad) < 1e-8);
}

TEST_CASE("outcome density") {
  CHECK(outcome_density(kVacuum, 0.4, -1.3) == doctest::Approx(1.0 / two_pi).epsilon(1e-14));

  // noon n = 2 at theta_true = 0: cos^2(2 theta_hat) / pi.
  const StateVector noon2 = build_noon(2);
  for (double th : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
    CHECK(outcome_density(noon2, 0.0, th) ==
          doctest::Approx(std::pow(std::cos(2.0 * th), 2) / pi).epsilon(1e-12));
  }

  // Integrates to 1 (quadrature) and depends only on the phase difference.
  Rng rng(derive_stream(29, "toeplitz_density"));
  for (int t = 0; t < 10; ++t) {
    const StateVector s = random_state(rng, 24);
    const QuadratureRule& rule = gauss_legendre(2048, -pi, pi);
    KahanSum mass;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      mass.add(rule.weights[i] * outcome_density(s, 0.0, rule.nodes[i]));
    }
    CHECK(std::abs(mass.value() - 1.0) < 1e-9);

    const double shift = rng.uniform(-pi, pi);
    const double base = outcome_density(s, 0.1, 0.9);
    CHECK(outcome_density(s, 0.1 + shift, 0.9 + shift) == doctest::Approx(base).epsilon(1e-11));
  }
}

TEST_CASE("density grid matches pointwise evaluation") {
  Rng rng(derive_stream(31, "toeplitz_grid"));
  const StateVector s = random_state(rng, 20);
  const OutcomeDensity density(s, 0.0);
  const int points = 512;
  const std::vector<double> grid = density.grid(points);
  for (int j = 0; j < points; j += 13) {
    const double theta = -pi + two_pi * j / points;
    CHECK(grid[static_cast<std::size_t>(j)] == doctest::Approx(density(theta)).epsilon(1e-10));
  }

  const OutcomeDensity shifted(s, 1.1);
  const std::vector<double> shifted_grid = shifted.grid(points);
  for (int j = 0; j < points; j += 29) {
    const double theta = -pi + two_pi * j / points;
    CHECK(shifted_grid[static_cast<std::size_t>(j)] ==
          doctest::Approx(shifted(theta)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(density.grid(s.support_size() - 1), std::invalid_argument);
}
