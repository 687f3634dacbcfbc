#include "phasebound/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phasebound/optimize.hpp"
#include "phasebound/rng.hpp"
#include "phasebound/toeplitz.hpp"

namespace phasebound {

namespace {

constexpr std::int64_t kSampleChunk = 1 << 16;

MseEstimate mse_of_errors(std::span<const double> errors) {
  if (errors.size() < 2) {
    throw std::invalid_argument("need at least two samples for an MSE estimate");
  }
  KahanSum sq, quad;
  for (const double e : errors) {
    sq.add(e * e);
    quad.add(e * e * e * e);
  }
  const double count = static_cast<double>(errors.size());
  const double mean_sq = sq.value() / count;
  const double var = std::max((quad.value() - count * mean_sq * mean_sq) / (count - 1.0), 0.0);
  return {mean_sq, std::sqrt(var / count)};
}

}  // namespace

OutcomeSampler::OutcomeSampler(const StateVector& state) {
  const int n_max = metrics(state).n_max;
  const int points = std::max(4096, 16 * n_max);
  const OutcomeDensity density(state, 0.0);
  std::vector<double> p = density.grid(points);
  p.push_back(p.front());  // periodic closure at +pi
  step_ = two_pi / points;

  cdf_.resize(p.size());
  cdf_[0] = 0.0;
  KahanSum acc;
  for (std::size_t j = 1; j < p.size(); ++j) {
    acc.add(0.5 * (p[j - 1] + p[j]) * step_);
    cdf_[j] = acc.value();
  }
  const double total = cdf_.back();
  if (std::abs(total - 1.0) > 1e-6) {
    throw numerical_error("outcome density mass drifted from 1; grid undersampled");
  }
}

double OutcomeSampler::sample_error(Rng& rng) const {
  const double target = rng.uniform() * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  std::size_t cell = it == cdf_.begin() ? 0 : static_cast<std::size_t>(it - cdf_.begin()) - 1;
  cell = std::min(cell, cdf_.size() - 2);
  const double width = cdf_[cell + 1] - cdf_[cell];
  const double frac = width > 0.0 ? (target - cdf_[cell]) / width : 0.5;
  return -pi + step_ * (static_cast<double>(cell) + frac);
}

SampleBatch OutcomeSampler::sample(double theta_true, int count, std::uint64_t seed) const {
  if (count < 1) {
    throw std::invalid_argument("sample count must be positive");
  }
  SampleBatch batch;
  batch.theta_true = theta_true;
  batch.seed = seed;
  batch.estimates.resize(static_cast<std::size_t>(count));
  parallel_chunks(count, kSampleChunk, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    Rng rng(derive_stream(seed, "sample_outcomes", static_cast<std::uint64_t>(chunk)));
    for (std::int64_t i = begin; i < end; ++i) {
      batch.estimates[static_cast<std::size_t>(i)] = wrap_angle(theta_true + sample_error(rng));
    }
  });
  return batch;
}

SampleBatch sample_outcomes(const StateVector& state, double theta_true, int count,
                            std::uint64_t seed) {
  return OutcomeSampler(state).sample(theta_true, count, seed);
}

MseEstimate empirical_mse(const SampleBatch& batch) {
  std::vector<double> errors(batch.estimates.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    errors[i] = wrapped_error(batch.estimates[i], batch.theta_true);
  }
  return mse_of_errors(errors);
}

namespace {

// Resolves a 2pi/n-periodic estimate to the candidate nearest theta0; the
// half-open window [-spacing/2, spacing/2) breaks ties toward the smaller
// candidate.
double resolve_branch(double theta_hat, double theta0, double spacing) {
  const double v = theta_hat - theta0;
  return theta0 + v - spacing * std::floor((v + spacing / 2.0) / spacing);
}

PlateauRow worst_over_theta_grid(const OutcomeSampler& sampler, int label, double eps,
                                 double theta0, int theta_grid, int count,
                                 std::uint64_t seed, const char* tag,
                                 double resolve_spacing, double lower_bound) {
  PlateauRow row{label, 0.0, 0.0, lower_bound};
  for (int g = 0; g < theta_grid; ++g) {
    const double theta = theta_grid == 1
                             ? theta0
                             : theta0 - eps + 2.0 * eps * g / (theta_grid - 1);
    SampleBatch batch =
        sampler.sample(theta, count, derive_stream(seed, tag, static_cast<std::uint64_t>(g)));
    std::vector<double> errors(batch.estimates.size());
    for (std::size_t i = 0; i < errors.size(); ++i) {
      const double estimate =
          resolve_spacing > 0.0
              ? resolve_branch(batch.estimates[i], theta0, resolve_spacing)
              : batch.estimates[i];
      errors[i] = wrapped_error(estimate, theta);
    }
    const MseEstimate mse = mse_of_errors(errors);
    if (mse.mse > row.worst_mse) {
      row.worst_mse = mse.mse;
      row.worst_std_error = mse.std_error;
    }
  }
  return row;
}

}  // namespace

PlateauTable noon_plateau_demo(std::span<const int> n_list, double eps, int count,
                               std::uint64_t seed, double theta0, int theta_grid,
                               int sine_contrast_energy) {
  if (n_list.empty()) {
    throw std::invalid_argument("plateau demo needs at least one noon order");
  }
  if (!(eps > 0.0) || eps > pi / 4.0) {
    throw std::invalid_argument("eps must lie in (0, pi/4]");
  }
  if (theta_grid < 1) {
    throw std::invalid_argument("theta grid must have at least one point");
  }

  PlateauTable table;
  table.eps = eps;
  table.theta0 = theta0;
  table.plateau_regime_reached = false;
  for (const int n : n_list) {
    if (n > two_pi / eps) table.plateau_regime_reached = true;
  }

  for (std::size_t idx = 0; idx < n_list.size(); ++idx) {
    const int n = n_list[idx];
    const OutcomeSampler sampler(build_noon(n));
    table.rows.push_back(worst_over_theta_grid(
        sampler, n, eps, theta0, theta_grid, count,
        derive_stream(seed, "plateau_noon", static_cast<std::uint64_t>(n)), "plateau_theta",
        two_pi / n, noon_local_minimax_lower(n, eps)));
  }

  if (sine_contrast_energy > 0) {
    const OutcomeSampler sampler(build_sine(sine_contrast_energy));
    table.sine_contrast = worst_over_theta_grid(
        sampler, sine_contrast_energy, eps, theta0, theta_grid, count,
        derive_stream(seed, "plateau_sine", static_cast<std::uint64_t>(sine_contrast_energy)),
        "plateau_theta", 0.0, 0.0);
  }
  return table;
}

TwoStepReport two_step_demo(int energy_total, double split, int trials, std::uint64_t seed) {
  if (energy_total < 8) {
    throw std::invalid_argument("two-step demo needs a total budget of at least 8");
  }
  if (!(split > 0.0) || split > 1.0) {
    throw std::invalid_argument("split must lie in (0, 1]");
  }
  if (trials < 2) {
    throw std::invalid_argument("two-step demo needs at least two trials");
  }

  TwoStepReport report;
  report.energy_stage1 = std::clamp(static_cast<int>(std::lround(split * energy_total)), 1,
                                    energy_total);
  report.energy_stage2 = energy_total - report.energy_stage1;
  report.degenerate_one_shot = report.energy_stage2 == 0;
  report.reference = pi * pi / 4.0 / (static_cast<double>(energy_total) * energy_total);

  const OutcomeSampler stage1(build_sine(report.energy_stage1));
  const OutcomeSampler one_shot(build_sine(energy_total));

  std::vector<double> err_two(static_cast<std::size_t>(trials));
  std::vector<double> err_noon(static_cast<std::size_t>(trials));
  std::vector<double> err_one(static_cast<std::size_t>(trials));

  if (report.degenerate_one_shot) {
    parallel_chunks(trials, kSampleChunk, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
      Rng rng(derive_stream(seed, "two_step", static_cast<std::uint64_t>(chunk)));
      for (std::int64_t i = begin; i < end; ++i) {
        const double theta = rng.uniform(-pi, pi);
        const double coarse = wrap_angle(theta + stage1.sample_error(rng));
        const double oneshot = wrap_angle(theta + one_shot.sample_error(rng));
        err_two[static_cast<std::size_t>(i)] = wrapped_error(coarse, theta);
        err_noon[static_cast<std::size_t>(i)] = wrapped_error(coarse, theta);
        err_one[static_cast<std::size_t>(i)] = wrapped_error(oneshot, theta);
      }
    });
  } else {
    const OutcomeSampler stage2_sine(build_sine(report.energy_stage2));
    const OutcomeSampler stage2_noon(build_noon(report.energy_stage2));
    const double spacing = two_pi / report.energy_stage2;
    parallel_chunks(trials, kSampleChunk, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
      Rng rng(derive_stream(seed, "two_step", static_cast<std::uint64_t>(chunk)));
      for (std::int64_t i = begin; i < end; ++i) {
        const double theta = rng.uniform(-pi, pi);
        const double coarse = wrap_angle(theta + stage1.sample_error(rng));
        const double fine_sine = wrap_angle(theta + stage2_sine.sample_error(rng));
        const double fine_noon = wrap_angle(theta + stage2_noon.sample_error(rng));
        const double oneshot = wrap_angle(theta + one_shot.sample_error(rng));
        // Resolve the refinement into the window centered at the coarse pass.
        const double two_step = coarse + wrap_angle(fine_sine - coarse);
        const double two_step_noon = resolve_branch(fine_noon, coarse, spacing);
        err_two[static_cast<std::size_t>(i)] = wrapped_error(two_step, theta);
        err_noon[static_cast<std::size_t>(i)] = wrapped_error(two_step_noon, theta);
        err_one[static_cast<std::size_t>(i)] = wrapped_error(oneshot, theta);
      }
    });
  }

  report.two_step = mse_of_errors(err_two);
  report.two_step_noon = mse_of_errors(err_noon);
  report.one_shot = mse_of_errors(err_one);
  return report;
}

}  // namespace phasebound
