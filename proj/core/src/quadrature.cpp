#include "phasebound/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace phasebound {

namespace {

// Legendre value and derivative at x by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

// Nodes and weights on [-1, 1]: Newton iteration from the Chebyshev-angle
// initial guess, full double precision at any order.
QuadratureRule reference_rule(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        const auto [p2, d2] = legendre(n, x);
        dp = d2;
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) {
    // Middle node is exactly 0.
    const auto [p, d] = legendre(n, 0.0);
    (void)p;
    rule.nodes[static_cast<std::size_t>(half - 1)] = 0.0;
    rule.weights[static_cast<std::size_t>(half - 1)] = 2.0 / (d * d);
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int points, double a, double b) {
  if (points < 1) {
    throw std::invalid_argument("quadrature rule needs at least one node");
  }
  if (!(a < b)) {
    throw std::invalid_argument("quadrature interval must satisfy a < b");
  }
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<QuadratureRule>> cache;

  std::scoped_lock lock(mutex);
  auto& slot = cache[{points, a, b}];
  if (!slot) {
    QuadratureRule base = reference_rule(points);
    const double mid = 0.5 * (a + b);
    const double scale = 0.5 * (b - a);
    for (int i = 0; i < points; ++i) {
      base.nodes[static_cast<std::size_t>(i)] = mid + scale * base.nodes[static_cast<std::size_t>(i)];
      base.weights[static_cast<std::size_t>(i)] *= scale;
    }
    slot = std::make_unique<QuadratureRule>(std::move(base));
  }
  return *slot;
}

}  // namespace phasebound
