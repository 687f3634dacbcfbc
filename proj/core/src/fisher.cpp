#include "phasebound/fisher.hpp"

#include <limits>
#include <stdexcept>

#include "phasebound/util.hpp"

namespace phasebound {

FisherResult sld_fisher(const StateVector& state) {
  const PhotonMetrics m = metrics(state);
  const double variance = m.n2_avg - m.n_mean * m.n_mean;
  const double information = 4.0 * std::max(variance, 0.0);
  const double bound = information > 0.0 ? 1.0 / information
                                         : std::numeric_limits<double>::infinity();
  return {information, bound};
}

double lub_bound(const Constraint& constraint) {
  if (constraint.budget < 1.0) {
    throw std::invalid_argument("locally-unbiased bound requires a budget of at least 1");
  }
  return 1.0 / (4.0 * constraint.budget * constraint.budget);
}

}  // namespace phasebound
