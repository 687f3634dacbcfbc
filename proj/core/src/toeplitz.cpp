#include "phasebound/toeplitz.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

#include "phasebound/quadrature.hpp"
#include "phasebound/util.hpp"

namespace phasebound {

namespace {

constexpr int kDirectAutocorrelationLimit = 2048;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double kernel_entry(int k) {
  if (k < 0) k = -k;
  if (k == 0) return pi * pi / 3.0;
  const double kk = static_cast<double>(k) * k;
  return (k % 2 == 0 ? 2.0 : -2.0) / kk;
}

ToeplitzKernel::ToeplitzKernel(int max_lag) {
  if (max_lag < 0) {
    throw std::invalid_argument("kernel table requires max_lag >= 0");
  }
  entries_.resize(static_cast<std::size_t>(max_lag) + 1);
  for (int k = 0; k <= max_lag; ++k) {
    entries_[static_cast<std::size_t>(k)] = kernel_entry(k);
  }
}

double ToeplitzKernel::operator[](int k) const {
  if (k < 0) k = -k;
  if (k > max_lag()) {
    throw std::out_of_range("kernel lag exceeds table size");
  }
  return entries_[static_cast<std::size_t>(k)];
}

namespace detail {

std::vector<Complex> autocorrelation(std::span<const Complex> a, bool use_fft) {
  const std::size_t d = a.size();
  std::vector<Complex> c(d);
  if (!use_fft) {
    for (std::size_t k = 0; k < d; ++k) {
      KahanSum re, im;
      for (std::size_t n = 0; n + k < d; ++n) {
        const Complex t = std::conj(a[n]) * a[n + k];
        re.add(t.real());
        im.add(t.imag());
      }
      c[k] = Complex{re.value(), im.value()};
    }
    return c;
  }
  // Linear correlation via a zero-padded circular one.
  const std::size_t len = next_pow2(2 * d - 1);
  std::vector<Complex> padded(len, Complex{0.0, 0.0});
  std::copy(a.begin(), a.end(), padded.begin());
  Eigen::FFT<double> fft;
  std::vector<Complex> freq(len);
  fft.fwd(freq, padded);
  for (Complex& z : freq) z = Complex{std::norm(z), 0.0};
  std::vector<Complex> corr(len);
  fft.inv(corr, freq);
  // IFFT(|FFT(a)|^2)[k] = sum_n conj(a_n) a_{n+k} once zero-padding prevents wrap.
  for (std::size_t k = 0; k < d; ++k) c[k] = corr[k];
  return c;
}

Complex inverse_fourier(const StateVector& state, double theta) {
  const Complex step = std::polar(1.0, -theta);
  Complex phase = std::polar(1.0, -static_cast<double>(state.lo()) * theta);
  Complex sum{0.0, 0.0};
  int counter = 0;
  for (int n = state.lo(); n <= state.hi(); ++n) {
    sum += state.amplitude(n) * phase;
    if (++counter % 256 == 0) {
      phase = std::polar(1.0, -static_cast<double>(n + 1) * theta);
    } else {
      phase *= step;
    }
  }
  return sum;
}

}  // namespace detail

double covariant_mse(const StateVector& state) {
  const auto a = state.amplitudes();
  const bool use_fft = static_cast<int>(a.size()) > kDirectAutocorrelationLimit;
  const std::vector<Complex> c = detail::autocorrelation(a, use_fft);
  KahanSum value;
  value.add(kernel_entry(0) * c[0].real());
  for (std::size_t k = 1; k < c.size(); ++k) {
    value.add(2.0 * kernel_entry(static_cast<int>(k)) * c[k].real());
  }
  return value.value();
}

double quadrature_mse_oracle(const StateVector& state, int grid_points) {
  const int n_max = metrics(state).n_max;
  if (grid_points < 4 * (n_max + 1)) {
    throw std::invalid_argument(
        "quadrature grid is undersampled: need at least 4 (n_max + 1) points");
  }
  const QuadratureRule& rule = gauss_legendre(grid_points, -pi, pi);
  KahanSum integral;
  for (int i = 0; i < grid_points; ++i) {
    const double theta = rule.nodes[static_cast<std::size_t>(i)];
    const double density = std::norm(detail::inverse_fourier(state, theta)) / two_pi;
    integral.add(rule.weights[static_cast<std::size_t>(i)] * theta * theta * density);
  }
  return integral.value();
}

double outcome_density(const StateVector& state, double theta_true, double theta_hat) {
  return std::norm(detail::inverse_fourier(state, theta_hat - theta_true)) / two_pi;
}

OutcomeDensity::OutcomeDensity(StateVector state, double theta_true)
    : state_(std::move(state)), theta_true_(theta_true) {}

double OutcomeDensity::operator()(double theta_hat) const {
  return outcome_density(state_, theta_true_, theta_hat);
}

std::vector<double> OutcomeDensity::grid(int points) const {
  if (points < state_.support_size()) {
    throw std::invalid_argument("density grid must have at least one point per coefficient");
  }
  const std::size_t len = static_cast<std::size_t>(points);
  if (theta_true_ != 0.0) {
    // Grid nodes of the shifted density fall off the DFT grid; evaluate
    // directly.
    std::vector<double> density(len);
    const double h = two_pi / static_cast<double>(points);
    for (std::size_t j = 0; j < len; ++j) {
      density[j] = outcome_density(state_, theta_true_, -pi + h * static_cast<double>(j));
    }
    return density;
  }
  // One DFT of the index-mapped amplitudes gives
  // F^{-1}(a)(u_j) at u_j = -pi + 2 pi j / points:
  // exp(-i n u_j) = exp(i n pi) exp(-2 pi i n j / points).
  std::vector<Complex> padded(len, Complex{0.0, 0.0});
  for (int n = state_.lo(); n <= state_.hi(); ++n) {
    const std::size_t bin =
        static_cast<std::size_t>(((n % points) + points) % points);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    padded[bin] += state_.amplitude(n) * sign;
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> freq(len);
  fft.fwd(freq, padded);
  std::vector<double> density(len);
  for (std::size_t j = 0; j < len; ++j) density[j] = std::norm(freq[j]) / two_pi;
  return density;
}

}  // namespace phasebound
