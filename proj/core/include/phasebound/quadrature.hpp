#pragma once

#include <vector>

namespace phasebound {

/// Gauss-Legendre nodes and weights on a fixed interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with `points` nodes on [a, b]. Tables are cached per point count;
/// safe to call from multiple threads.
const QuadratureRule& gauss_legendre(int points, double a, double b);

}  // namespace phasebound
