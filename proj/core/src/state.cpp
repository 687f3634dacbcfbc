#include "phasebound/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "phasebound/util.hpp"

namespace phasebound {

namespace {

double norm_squared(std::span<const Complex> a) {
  KahanSum s;
  for (const Complex& z : a) s.add(std::norm(z));
  return s.value();
}

void check_finite(std::span<const Complex> a) {
  for (const Complex& z : a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("state amplitudes must be finite");
    }
  }
}

}  // namespace

StateVector::StateVector(int lo, int hi, std::vector<Complex> amplitudes)
    : lo_(lo), hi_(hi), amplitudes_(std::move(amplitudes)) {
  if (lo_ > 0 || hi_ < 0) {
    throw std::invalid_argument("state index range must contain 0");
  }
  if (static_cast<int>(amplitudes_.size()) != hi_ - lo_ + 1) {
    throw std::invalid_argument("amplitude count does not match index range");
  }
  check_finite(amplitudes_);
  const double n2 = norm_squared(amplitudes_);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw std::invalid_argument("state is not normalized: |norm^2 - 1| = " +
                                std::to_string(std::abs(n2 - 1.0)));
  }
}

StateVector StateVector::normalized(int lo, int hi, std::vector<Complex> amplitudes) {
  check_finite(amplitudes);
  const double n2 = norm_squared(amplitudes);
  if (!(n2 > 0.0)) {
    throw std::invalid_argument("cannot normalize a zero-norm state");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (Complex& z : amplitudes) z *= scale;
  return StateVector(lo, hi, std::move(amplitudes));
}

PhotonMetrics metrics(const StateVector& state) {
  PhotonMetrics m;
  KahanSum n2, n1;
  for (int n = state.lo(); n <= state.hi(); ++n) {
    const double p = std::norm(state.amplitude(n));
    if (p != 0.0) m.n_max = std::max(m.n_max, std::abs(n));
    n2.add(static_cast<double>(n) * n * p);
    n1.add(n * p);
  }
  m.n2_avg = n2.value();
  m.n_mean = n1.value();
  return m;
}

StateVector build_noon(int n) {
  if (n < 1) {
    throw std::invalid_argument("noon state requires n >= 1");
  }
  std::vector<Complex> a(2 * n + 1, Complex{0.0, 0.0});
  const double w = 1.0 / std::sqrt(2.0);
  a.front() = Complex{w, 0.0};
  a.back() = Complex{w, 0.0};
  return StateVector(-n, n, std::move(a));
}

GaussianBuild build_gaussian(double energy, double cutoff_sigmas) {
  if (!(energy > 0.0)) {
    throw std::invalid_argument("gaussian profile requires energy > 0");
  }
  if (!(cutoff_sigmas > 0.0)) {
    throw std::invalid_argument("gaussian profile requires a positive cutoff");
  }
  const int n_max = static_cast<int>(std::ceil(cutoff_sigmas * energy));
  std::vector<Complex> a(2 * n_max + 1);
  KahanSum w2;
  for (int n = -n_max; n <= n_max; ++n) {
    const double w = std::exp(-static_cast<double>(n) * n / (4.0 * energy * energy));
    a[static_cast<std::size_t>(n + n_max)] = Complex{w, 0.0};
    w2.add(w * w);
  }
  const double c = 1.0 / std::sqrt(w2.value());
  return GaussianBuild{StateVector::normalized(-n_max, n_max, std::move(a)), c};
}

StateVector build_sine(int energy) {
  if (energy < 1) {
    throw std::invalid_argument("sine profile requires energy >= 1");
  }
  std::vector<Complex> a(2 * energy + 1);
  for (int n = -energy; n <= energy; ++n) {
    const double w = std::sin(pi * (energy + n + 1) / (2.0 * energy + 2.0));
    a[static_cast<std::size_t>(n + energy)] = Complex{w, 0.0};
  }
  return StateVector::normalized(-energy, energy, std::move(a));
}

CoherentNoonBuild build_coherent_noon(double alpha, double tail_tolerance) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("coherent noon state requires alpha > 0");
  }
  if (!(tail_tolerance > 0.0) || tail_tolerance > 1e-6) {
    throw std::invalid_argument("tail_tolerance must lie in (0, 1e-6]");
  }
  const double mu = alpha * alpha;
  const double total = 1.0 + std::exp(-mu);  // squared norm / 2

  // Poisson amplitudes sqrt(p_k); extend until the per-branch tail mass
  // 1 - sum_k p_k drops the discarded probability below tolerance.
  std::vector<double> weight;  // weight[k] = alpha^k exp(-mu/2) / sqrt(k!)
  weight.push_back(std::exp(-mu / 2.0));
  double cumulative = weight[0] * weight[0];
  double discarded = (1.0 - cumulative) / total;
  while (discarded >= tail_tolerance) {
    const std::size_t k = weight.size();
    if (k > 100000) {
      throw numerical_error("coherent noon truncation did not converge");
    }
    weight.push_back(weight.back() * alpha / std::sqrt(static_cast<double>(k)));
    cumulative += weight.back() * weight.back();
    discarded = (1.0 - cumulative) / total;
  }
  discarded = std::max(discarded, 0.0);

  const int k_max = static_cast<int>(weight.size()) - 1;
  std::vector<Complex> a(2 * k_max + 1, Complex{0.0, 0.0});
  a[static_cast<std::size_t>(k_max)] = Complex{2.0 * weight[0], 0.0};  // both branches at k = 0
  for (int k = 1; k <= k_max; ++k) {
    a[static_cast<std::size_t>(k_max + k)] = Complex{weight[static_cast<std::size_t>(k)], 0.0};
    a[static_cast<std::size_t>(k_max - k)] = Complex{weight[static_cast<std::size_t>(k)], 0.0};
  }
  return CoherentNoonBuild{StateVector::normalized(-k_max, k_max, std::move(a)),
                           alpha, discarded};
}

StateVector from_continuum(const std::function<Complex(double)>& profile,
                           double x_lo, double x_hi, double energy) {
  if (!(energy > 0.0)) {
    throw std::invalid_argument("from_continuum requires energy > 0");
  }
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("from_continuum requires x_lo < x_hi");
  }
  // Small nudges keep exact domain endpoints like x = n/E on the grid.
  int n_lo = static_cast<int>(std::ceil(x_lo * energy - 1e-9));
  int n_hi = static_cast<int>(std::floor(x_hi * energy + 1e-9));
  n_lo = std::min(n_lo, 0);
  n_hi = std::max(n_hi, 0);
  std::vector<Complex> a(static_cast<std::size_t>(n_hi - n_lo + 1), Complex{0.0, 0.0});
  for (int n = n_lo; n <= n_hi; ++n) {
    const double x = static_cast<double>(n) / energy;
    if (x < x_lo - 1e-12 || x > x_hi + 1e-12) continue;
    a[static_cast<std::size_t>(n - n_lo)] = profile(std::clamp(x, x_lo, x_hi));
  }
  return StateVector::normalized(n_lo, n_hi, std::move(a));
}

}  // namespace phasebound
