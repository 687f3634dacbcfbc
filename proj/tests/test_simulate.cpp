#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "phasebound/optimize.hpp"
#include "phasebound/quadrature.hpp"
#include "phasebound/rng.hpp"
#include "phasebound/simulate.hpp"
#include "phasebound/state.hpp"
#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"

using namespace phasebound;

namespace {

const StateVector kVacuum(0, 0, {Complex{1.0, 0.0}});

// Kolmogorov-Smirnov distance against the uniform law on [-pi, pi).
double ks_uniform(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = (samples[i] + pi) / two_pi;
    d = std::max(d, std::abs(cdf - (i + 1) / n));
    d = std::max(d, std::abs(cdf - i / n));
  }
  return d;
}

// Chi-square statistic on equal-width bins, expected masses by per-bin
// Gauss-Legendre integration of the exact density.
double chi_square_statistic(const StateVector& state, double theta_true,
                            const std::vector<double>& samples, int bins) {
  std::vector<double> expected(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    const double lo = -pi + two_pi * b / bins;
    const double hi = -pi + two_pi * (b + 1) / bins;
    const QuadratureRule& rule = gauss_legendre(32, lo, hi);
    KahanSum mass;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      mass.add(rule.weights[i] * outcome_density(state, theta_true, rule.nodes[i]));
    }
    expected[static_cast<std::size_t>(b)] = mass.value() * static_cast<double>(samples.size());
  }
  std::vector<double> observed(static_cast<std::size_t>(bins), 0.0);
  for (const double s : samples) {
    int b = static_cast<int>((s + pi) / two_pi * bins);
    b = std::clamp(b, 0, bins - 1);
    observed[static_cast<std::size_t>(b)] += 1.0;
  }
  double stat = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double e = expected[static_cast<std::size_t>(b)];
    if (e < 1e-9) continue;
    const double diff = observed[static_cast<std::size_t>(b)] - e;
    stat += diff * diff / e;
  }
  return stat;
}

}  // namespace

TEST_CASE("vacuum outcomes are uniform (KS at alpha = 0.01)") {
  const SampleBatch batch = sample_outcomes(kVacuum, 0.7, 100000, 404);
  // Asymptotic critical value sqrt(-ln(alpha/2)/2) / sqrt(n) at alpha = 0.01.
  const double critical = 1.6276 / std::sqrt(100000.0);
  CHECK(ks_uniform(batch.estimates) < critical);
}

TEST_CASE("noon(2) empirical density matches cos^2(2u)/pi (chi^2, 64 bins)") {
  const SampleBatch batch = sample_outcomes(build_noon(2), 0.0, 100000, 505);
  const double stat = chi_square_statistic(build_noon(2), 0.0, batch.estimates, 64);
  // 0.99 quantile of chi^2 with 63 degrees of freedom.
  CHECK(stat < 92.010);
}

TEST_CASE("fixed seed reproduces batches bit for bit") {
  const StateVector state = build_sine(12);
  const SampleBatch a = sample_outcomes(state, 0.3, 20000, 99);
  const SampleBatch b = sample_outcomes(state, 0.3, 20000, 99);
  REQUIRE(a.estimates.size() == b.estimates.size());
  for (std::size_t i = 0; i < a.estimates.size(); ++i) {
    CHECK(a.estimates[i] == b.estimates[i]);
  }
  const SampleBatch c = sample_outcomes(state, 0.3, 20000, 100);
  CHECK(a.estimates != c.estimates);
}

TEST_CASE("empirical MSE matches the covariant form") {
  struct Case {
    StateVector state;
    double theta;
  };
  const Case cases[] = {{kVacuum, 0.0},
                        {build_noon(1), 0.4},
                        {build_noon(2), -1.0},
                        {build_sine(32), 2.2}};
  int idx = 0;
  for (const Case& c : cases) {
    const SampleBatch batch =
        sample_outcomes(c.state, c.theta, 100000, derive_stream(7, "test_mse", idx++));
    const MseEstimate est = empirical_mse(batch);
    CHECK(std::abs(est.mse - covariant_mse(c.state)) < 4.0 * est.std_error);
  }
}

TEST_CASE("sampler soundness across a 50-state random suite") {
  Rng rng(derive_stream(77, "simulate_random_states"));
  for (int t = 0; t < 50; ++t) {
    const int hw = 1 + static_cast<int>(rng.next_u64() % 24);
    std::vector<Complex> a(static_cast<std::size_t>(2 * hw + 1));
    for (Complex& z : a) z = Complex{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const StateVector s = StateVector::normalized(-hw, hw, std::move(a));
    const SampleBatch batch =
        sample_outcomes(s, rng.uniform(-pi, pi), 100000, derive_stream(8, "soundness", t));
    const MseEstimate est = empirical_mse(batch);
    CHECK(std::abs(est.mse - covariant_mse(s)) < 4.0 * est.std_error);
  }
}

TEST_CASE("wrap invariance under common phase shifts") {
  const StateVector state = build_noon(3);
  const SampleBatch base = sample_outcomes(state, 0.0, 50000, 31);
  const MseEstimate reference = empirical_mse(base);
  // Shift both the true phase and the estimates; the estimates cross the
  // +-pi boundary and must wrap through it unchanged.
  for (const double shift : {2.5, -3.0, 11.0}) {
    SampleBatch shifted = base;
    shifted.theta_true = wrap_angle(base.theta_true + shift);
    for (double& e : shifted.estimates) e = wrap_angle(e + shift);
    const MseEstimate est = empirical_mse(shifted);
    CHECK(est.mse == doctest::Approx(reference.mse).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(reference.std_error).epsilon(1e-9));
  }
}

TEST_CASE("wrapped error convention") {
  CHECK(wrapped_error(0.1, 0.0) == doctest::Approx(0.1));
  CHECK(wrapped_error(-3.0, 3.0) == doctest::Approx(two_pi - 6.0).epsilon(1e-12));
  CHECK(wrapped_error(pi, 0.0) == doctest::Approx(-pi));  // [-pi, pi): pi wraps down
  CHECK(empirical_mse(sample_outcomes(kVacuum, 3.0, 10000, 3)).mse <
        pi * pi / 3.0 + 0.3);
}

TEST_CASE("sampler rejects invalid requests") {
  CHECK_THROWS_AS(sample_outcomes(kVacuum, 0.0, 0, 1), std::invalid_argument);
  SampleBatch tiny;
  tiny.theta_true = 0.0;
  tiny.estimates = {0.1};
  CHECK_THROWS_AS(empirical_mse(tiny), std::invalid_argument);
}

TEST_CASE("plateau demo behavior (reduced scale)") {
  const std::vector<int> orders{50, 100};
  const PlateauTable table = noon_plateau_demo(orders, 0.1, 4000, 11, 0.25, 17, 100);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.plateau_regime_reached);
  for (const PlateauRow& row : table.rows) {
    CHECK(row.lower_bound == doctest::Approx(noon_local_minimax_lower(row.n, 0.1)));
    CHECK(row.worst_mse >= row.lower_bound - 3.0 * row.worst_std_error);
    // Resolved estimates hug theta0, so the worst MSE is near eps^2.
    CHECK(row.worst_mse < 0.1);
  }
  REQUIRE(table.sine_contrast.has_value());
  CHECK(table.sine_contrast->worst_mse < 1e-3);
  CHECK(table.sine_contrast->worst_mse > 0.0);

  // All orders below the 2 pi / eps threshold: plateau regime not reached.
  const std::vector<int> low{8};
  const PlateauTable low_table = noon_plateau_demo(low, 0.1, 100, 1, 0.0, 3, 0);
  CHECK_FALSE(low_table.plateau_regime_reached);

  CHECK_THROWS_AS(noon_plateau_demo(std::vector<int>{}, 0.1, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(noon_plateau_demo(orders, 2.0, 10, 1), std::invalid_argument);
}

TEST_CASE("two-step demo (reduced scale)") {
  const TwoStepReport report = two_step_demo(64, 0.25, 20000, 2024);
  CHECK(report.energy_stage1 == 16);
  CHECK(report.energy_stage2 == 48);
  CHECK_FALSE(report.degenerate_one_shot);
  CHECK(report.reference == doctest::Approx(pi * pi / 4.0 / 4096.0).epsilon(1e-12));
  // Two-step lands within a factor 4 of the asymptotic reference.
  CHECK(report.two_step.mse < 4.0 * report.reference);
  // Replacing the refinement stage with a noon state degrades the MSE by
  // roughly an order of magnitude (the per-branch density is broad).
  CHECK(report.two_step_noon.mse > 8.0 * report.two_step.mse);
  // One-shot at the full budget is close to its covariant MSE.
  CHECK(std::abs(report.one_shot.mse - covariant_mse(build_sine(64))) <
        5.0 * report.one_shot.std_error);

  const TwoStepReport degenerate = two_step_demo(64, 1.0, 500, 1);
  CHECK(degenerate.degenerate_one_shot);
  CHECK(degenerate.energy_stage2 == 0);

  CHECK_THROWS_AS(two_step_demo(4, 0.5, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(two_step_demo(64, 0.0, 100, 1), std::invalid_argument);
}

TEST_CASE("deterministic tables end to end") {
  const std::vector<int> orders{40};
  const PlateauTable a = noon_plateau_demo(orders, 0.15, 2000, 5, 0.0, 9, 40);
  const PlateauTable b = noon_plateau_demo(orders, 0.15, 2000, 5, 0.0, 9, 40);
  CHECK(a.rows[0].worst_mse == b.rows[0].worst_mse);
  CHECK(a.sine_contrast->worst_mse == b.sine_contrast->worst_mse);

  const TwoStepReport r1 = two_step_demo(32, 0.5, 4000, 77);
  const TwoStepReport r2 = two_step_demo(32, 0.5, 4000, 77);
  CHECK(r1.two_step.mse == r2.two_step.mse);
  CHECK(r1.two_step_noon.mse == r2.two_step_noon.mse);
  CHECK(r1.one_shot.mse == r2.one_shot.mse);
}
