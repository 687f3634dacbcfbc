#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "phasebound/continuum.hpp"
#include "phasebound/rng.hpp"
#include "phasebound/state.hpp"
#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"

using namespace phasebound;

namespace {

ContinuumFunction gaussian_profile(int points = 4001, double half_width = 12.0) {
  return ContinuumFunction::from_callable(
      [](double x) { return Complex{std::exp(-x * x / 4.0), 0.0}; }, -half_width, half_width,
      points);
}

ContinuumFunction sine_profile(int points = 2001) {
  return ContinuumFunction::from_callable(
      [](double x) { return Complex{std::sin(pi * (1.0 + x) / 2.0), 0.0}; }, -1.0, 1.0, points);
}

double trapezoid_norm2(const ContinuumFunction& f) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    s += w * std::norm(f.samples()[static_cast<std::size_t>(i)]);
  }
  return s * f.step();
}

}  // namespace

TEST_CASE("grid functions are normalized and validated") {
  const ContinuumFunction f = gaussian_profile(801);
  CHECK(std::abs(trapezoid_norm2(f) - 1.0) < 1e-10);
  CHECK_THROWS_AS(ContinuumFunction::from_callable([](double) { return Complex{0, 0}; },
                                                   -1.0, 1.0, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(ContinuumFunction::from_callable([](double) { return Complex{1, 0}; },
                                                   -1.0, 1.0, 4),
                  std::invalid_argument);
}

TEST_CASE("expectation values on reference profiles") {
  const ContinuumFunction g = gaussian_profile();
  CHECK(std::abs(q2_expectation(g) - 1.0) < 1e-4);
  CHECK(std::abs(p2_expectation(g) - 0.25) < 1e-4);

  const ContinuumFunction s = sine_profile();
  CHECK(std::abs(p2_expectation(s) - pi * pi / 4.0) < 1e-4);

  const ContinuumFunction c = ContinuumFunction::from_callable(
      [](double) { return Complex{1.0, 0.0}; }, -1.0, 1.0, 2001);
  CHECK(std::abs(q2_expectation(c) - 1.0 / 3.0) < 1e-5);
}

TEST_CASE("finite differences: observed convergence order at least 1.9") {
  auto p2_error = [](int points) {
    return std::abs(p2_expectation(sine_profile(points)) - pi * pi / 4.0);
  };
  // Small grids keep the error far above roundoff; the stencils are
  // fourth-order so the ratio under doubling is ~16, well above 2^1.9.
  const double e1 = p2_error(26);
  const double e2 = p2_error(51);
  const double e4 = p2_error(101);
  CHECK(e1 / e2 > 3.7);
  CHECK(e2 / e4 > 3.7);

  auto q2_error = [](int points) {
    return std::abs(q2_expectation(gaussian_profile(points)) - 1.0);
  };
  // q2 is limited by the trapezoid rule, spectrally accurate for the decayed
  // Gaussian; just require it tiny.
  CHECK(q2_error(2001) < 1e-8);
}

TEST_CASE("Dirichlet ground state") {
  const DirichletGroundState g101 = dirichlet_ground_state(101);
  CHECK(std::abs(g101.eigenvalue / (pi * pi / 4.0) - 1.0) < 1e-3);

  // Exact discrete eigenvalue (2/h^2)(1 - cos(pi h / 2)).
  for (int m : {101, 201, 401}) {
    const double h = 2.0 / (m - 1);
    const double exact = 2.0 / (h * h) * (1.0 - std::cos(pi * h / 2.0));
    CHECK(std::abs(dirichlet_ground_state(m).eigenvalue - exact) < 1e-10);
  }

  // O(h^2) convergence toward pi^2/4.
  auto gap = [](int m) {
    return std::abs(dirichlet_ground_state(m).eigenvalue - pi * pi / 4.0);
  };
  CHECK(gap(101) / gap(201) > 3.5);
  CHECK(gap(101) / gap(201) < 4.5);
  CHECK(gap(201) / gap(401) > 3.5);
  CHECK(gap(201) / gap(401) < 4.5);

  // Eigenfunction matches sin(pi (1 + x) / 2) up to normalization.
  const DirichletGroundState g = dirichlet_ground_state(401);
  const ContinuumFunction reference = sine_profile(401);
  double err2 = 0.0;
  for (int i = 0; i < g.eigenfunction.size(); ++i) {
    err2 += std::norm(g.eigenfunction.samples()[static_cast<std::size_t>(i)] -
                      reference.samples()[static_cast<std::size_t>(i)]) *
            g.eigenfunction.step();
  }
  CHECK(std::sqrt(err2) < 1e-3);
  CHECK(std::abs(g.eigenfunction.samples().front()) == 0.0);
  CHECK(std::abs(g.eigenfunction.samples().back()) == 0.0);

  CHECK_THROWS_AS(dirichlet_ground_state(8), std::invalid_argument);
}

TEST_CASE("uncertainty products") {
  const UncertaintyCheck g = uncertainty_check(gaussian_profile());
  CHECK(std::abs(g.product - 0.25) < 1e-4);
  CHECK(g.ok);

  // Dirichlet ground state extended by zero: <Q^2> = 1/3 - 2/pi^2 about the
  // (zero) mean, <P^2> near pi^2/4.
  const DirichletGroundState ground = dirichlet_ground_state(1601);
  std::vector<Complex> extended;
  const int pad = 800;
  extended.insert(extended.end(), pad, Complex{0.0, 0.0});
  for (const Complex& z : ground.eigenfunction.samples()) extended.push_back(z);
  extended.insert(extended.end(), pad, Complex{0.0, 0.0});
  const ContinuumFunction wide = ContinuumFunction::from_samples(-2.0, 2.0, std::move(extended));
  const UncertaintyCheck d = uncertainty_check(wide);
  // The derivative jump at the support edge limits accuracy to O(h) here.
  const double q2_closed = 1.0 / 3.0 - 2.0 / (pi * pi);
  CHECK(d.q2 == doctest::Approx(q2_closed).epsilon(1e-3));
  CHECK(d.p2 == doctest::Approx(pi * pi / 4.0).epsilon(5e-3));
  CHECK(d.product == doctest::Approx(q2_closed * pi * pi / 4.0).epsilon(5e-3));
  CHECK(d.product > 0.25);
  CHECK(d.ok);

  // Random smooth decaying profiles never dip below 1/4.
  Rng rng(derive_stream(201, "continuum_uncertainty"));
  for (int t = 0; t < 20; ++t) {
    const double width = rng.uniform(0.5, 2.0);
    const double tilt = rng.uniform(-0.5, 0.5);
    const double wiggle = rng.uniform(0.0, 0.8);
    const ContinuumFunction f = ContinuumFunction::from_callable(
        [&](double x) {
          return Complex{std::exp(-width * x * x) * (1.0 + wiggle * std::cos(x + tilt)), 0.0};
        },
        -14.0, 14.0, 3001);
    CHECK(uncertainty_check(f).ok);
  }

  // Significant boundary mass invalidates the derivative quadrature.
  const ContinuumFunction flat = ContinuumFunction::from_callable(
      [](double) { return Complex{1.0, 0.0}; }, -1.0, 1.0, 512);
  CHECK_THROWS_AS(uncertainty_check(flat), std::invalid_argument);
}

TEST_CASE("from_continuum via grid interpolation") {
  const StateVector s = from_continuum(sine_profile(4001), 50.0);
  const StateVector direct = build_sine(50);
  double d2 = 0.0;
  for (int n = -51; n <= 51; ++n) d2 += std::norm(s.amplitude(n) - direct.amplitude(n));
  CHECK(std::sqrt(d2) < 0.05);
}

TEST_CASE("scaling convergence") {
  const std::vector<double> energies{16.0, 32.0, 64.0, 128.0};

  const ScalingTable sine_table = scaling_convergence(sine_profile(4001), energies);
  CHECK(sine_table.limit == doctest::Approx(pi * pi / 4.0).epsilon(1e-6));
  for (std::size_t i = 1; i < sine_table.rows.size(); ++i) {
    CHECK(sine_table.rows[i].scaled_mse < sine_table.rows[i - 1].scaled_mse);
  }
  CHECK(sine_table.rows.back().scaled_mse > pi * pi / 4.0);
  CHECK(sine_table.final_relative_gap < 0.03);

  const ScalingTable gauss_table = scaling_convergence(gaussian_profile(), energies);
  CHECK(gauss_table.limit == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(gauss_table.final_relative_gap < 0.03);

  // Phases matter: a sign flip in the profile changes the MSE even though the
  // moduli agree.
  const ContinuumFunction flipped = ContinuumFunction::from_callable(
      [](double x) {
        const double v = std::sin(pi * (1.0 + x) / 2.0);
        return Complex{x < 0.0 ? -v : v, 0.0};
      },
      -1.0, 1.0, 2001);
  const double mse_flipped = covariant_mse(from_continuum(flipped, 32.0));
  const double mse_plain = covariant_mse(from_continuum(sine_profile(2001), 32.0));
  CHECK(std::abs(mse_flipped - mse_plain) > 1e-4);

  CHECK_THROWS_AS(scaling_convergence(sine_profile(64), std::vector<double>{}),
                  std::invalid_argument);
  const ContinuumFunction complex_profile = ContinuumFunction::from_callable(
      [](double x) { return Complex{std::exp(-x * x), 0.3 * std::exp(-x * x)}; }, -6.0, 6.0,
      512);
  CHECK_THROWS_AS(scaling_convergence(complex_profile, energies), std::invalid_argument);
}
