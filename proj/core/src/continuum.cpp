#include "phasebound/continuum.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "phasebound/toeplitz.hpp"
#include "phasebound/util.hpp"

namespace phasebound {

namespace {

double trapezoid_norm2(std::span<const Complex> samples, double h) {
  KahanSum s;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 : 1.0;
    s.add(w * std::norm(samples[i]));
  }
  return s.value() * h;
}

}  // namespace

ContinuumFunction::ContinuumFunction(double x_lo, double x_hi, std::vector<Complex> samples)
    : x_lo_(x_lo), x_hi_(x_hi), samples_(std::move(samples)) {
  if (!(x_lo_ < x_hi_)) {
    throw std::invalid_argument("continuum domain requires x_lo < x_hi");
  }
  if (samples_.size() < 8) {
    throw std::invalid_argument("continuum grid needs at least 8 points");
  }
  for (const Complex& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("continuum samples must be finite");
    }
  }
  const double n2 = trapezoid_norm2(samples_, step());
  if (!(n2 > 0.0)) {
    throw std::invalid_argument("continuum profile has zero norm");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (Complex& z : samples_) z *= scale;
}

ContinuumFunction ContinuumFunction::from_callable(const std::function<Complex(double)>& f,
                                                   double x_lo, double x_hi, int points) {
  if (points < 8) {
    throw std::invalid_argument("continuum grid needs at least 8 points");
  }
  std::vector<Complex> samples(static_cast<std::size_t>(points));
  const double h = (x_hi - x_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    samples[static_cast<std::size_t>(i)] = f(x_lo + h * i);
  }
  return ContinuumFunction(x_lo, x_hi, std::move(samples));
}

ContinuumFunction ContinuumFunction::from_samples(double x_lo, double x_hi,
                                                  std::vector<Complex> samples) {
  return ContinuumFunction(x_lo, x_hi, std::move(samples));
}

Complex ContinuumFunction::interpolate(double x) const {
  if (x < x_lo_ || x > x_hi_) return {0.0, 0.0};
  const double t = (x - x_lo_) / step();
  const int i = std::min(static_cast<int>(std::floor(t)), size() - 2);
  const double frac = t - i;
  return samples_[static_cast<std::size_t>(i)] * (1.0 - frac) +
         samples_[static_cast<std::size_t>(i + 1)] * frac;
}

double q2_expectation(const ContinuumFunction& f) {
  KahanSum s;
  const double h = f.step();
  const auto samples = f.samples();
  for (int i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    const double x = f.node(i);
    s.add(w * x * x * std::norm(samples[static_cast<std::size_t>(i)]));
  }
  return s.value() * h;
}

namespace {

// Fourth-order first-derivative stencils, one-sided at the boundary. The
// O(h^2) central-difference bias of |f'|^2 integrals (about h^2/3 times the
// squared-curvature integral) would push saturating profiles below the
// uncertainty floor on practical grids; the O(h^4) bias is negligible there.
std::vector<Complex> derivative_samples(const ContinuumFunction& f) {
  const auto s = f.samples();
  const int m = f.size();
  const double h = f.step();
  auto at = [&](int i) { return s[static_cast<std::size_t>(i)]; };
  std::vector<Complex> d(static_cast<std::size_t>(m));
  d[0] = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) / (12.0 * h);
  d[1] = (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) / (12.0 * h);
  for (int i = 2; i + 2 < m; ++i) {
    d[static_cast<std::size_t>(i)] =
        (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
  }
  d[static_cast<std::size_t>(m - 2)] =
      (3.0 * at(m - 1) + 10.0 * at(m - 2) - 18.0 * at(m - 3) + 6.0 * at(m - 4) - at(m - 5)) /
      (12.0 * h);
  d[static_cast<std::size_t>(m - 1)] =
      (25.0 * at(m - 1) - 48.0 * at(m - 2) + 36.0 * at(m - 3) - 16.0 * at(m - 4) +
       3.0 * at(m - 5)) /
      (12.0 * h);
  return d;
}

}  // namespace

double p2_expectation(const ContinuumFunction& f) {
  const std::vector<Complex> d = derivative_samples(f);
  return trapezoid_norm2(d, f.step());
}

DirichletGroundState dirichlet_ground_state(int points) {
  if (points < 16) {
    throw std::invalid_argument("Dirichlet grid needs at least 16 points");
  }
  const int interior = points - 2;
  const double h = 2.0 / (points - 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(interior, 2.0 / (h * h));
  Eigen::VectorXd off = Eigen::VectorXd::Constant(interior - 1, -1.0 / (h * h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off);
  if (es.info() != Eigen::Success) {
    throw numerical_error("tridiagonal eigensolver failed");
  }
  const double eigenvalue = es.eigenvalues()[0];
  Eigen::VectorXd v = es.eigenvectors().col(0);
  if (v[interior / 2] < 0.0) v = -v;
  std::vector<Complex> samples(static_cast<std::size_t>(points), Complex{0.0, 0.0});
  for (int i = 0; i < interior; ++i) {
    samples[static_cast<std::size_t>(i + 1)] = Complex{v[i], 0.0};
  }
  return DirichletGroundState{eigenvalue,
                              ContinuumFunction::from_samples(-1.0, 1.0, std::move(samples))};
}

UncertaintyCheck uncertainty_check(const ContinuumFunction& f) {
  const auto s = f.samples();
  if (std::abs(s.front()) >= 1e-8 || std::abs(s.back()) >= 1e-8) {
    throw std::invalid_argument(
        "uncertainty check requires the profile to vanish at the boundary");
  }
  const double h = f.step();
  // First moments of Q and P.
  KahanSum q1;
  for (int i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    q1.add(w * f.node(i) * std::norm(s[static_cast<std::size_t>(i)]));
  }
  const double q_mean = q1.value() * h;

  const std::vector<Complex> d = derivative_samples(f);
  KahanSum p1, p2s;
  for (int i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    // <P> = Integral conj(f) (-i f') dx; real by normalization for decaying f.
    const Complex t = std::conj(s[static_cast<std::size_t>(i)]) *
                      Complex{0.0, -1.0} * d[static_cast<std::size_t>(i)];
    p1.add(w * t.real());
    p2s.add(w * std::norm(d[static_cast<std::size_t>(i)]));
  }
  const double p_mean = p1.value() * h;
  const double p2_raw = p2s.value() * h;

  KahanSum q2c;
  for (int i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    const double x = f.node(i) - q_mean;
    q2c.add(w * x * x * std::norm(s[static_cast<std::size_t>(i)]));
  }
  UncertaintyCheck out;
  out.q2 = q2c.value() * h;
  out.p2 = p2_raw - p_mean * p_mean;
  out.product = out.q2 * out.p2;
  out.ok = out.product >= 0.25 - 1e-6;
  return out;
}

StateVector from_continuum(const ContinuumFunction& f, double energy) {
  return from_continuum([&f](double x) { return f.interpolate(x); }, f.x_lo(), f.x_hi(),
                        energy);
}

ScalingTable scaling_convergence(const ContinuumFunction& f, std::span<const double> energies) {
  if (energies.empty()) {
    throw std::invalid_argument("scaling sweep needs at least one energy");
  }
  for (const Complex& z : f.samples()) {
    if (std::abs(z.imag()) > 1e-12) {
      throw std::invalid_argument("scaling sweep requires a real profile");
    }
  }
  ScalingTable table;
  table.limit = p2_expectation(f);
  table.rows.reserve(energies.size());
  for (const double e : energies) {
    if (!(e > 0.0)) throw std::invalid_argument("energies must be positive");
    const StateVector state = from_continuum(f, e);
    table.rows.push_back({e, e * e * covariant_mse(state)});
  }
  table.final_relative_gap = std::abs(table.rows.back().scaled_mse / table.limit - 1.0);
  table.monotone_after_first = true;
  for (std::size_t i = 2; i < table.rows.size(); ++i) {
    const double prev = std::abs(table.rows[i - 1].scaled_mse - table.limit);
    const double cur = std::abs(table.rows[i].scaled_mse - table.limit);
    if (cur > prev) table.monotone_after_first = false;
  }
  return table;
}

}  // namespace phasebound
