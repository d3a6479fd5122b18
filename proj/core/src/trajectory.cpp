#include "qkde/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qkde {

StepPlan plan_steps(double t0, double tf, double tau) {
  if (!std::isfinite(t0) || !std::isfinite(tf) || !std::isfinite(tau)) {
    throw InvalidHorizonError("non-finite horizon or step");
  }
  if (!(tf > t0)) throw InvalidHorizonError("tf must be greater than t0");
  if (!(tau > 0.0)) throw InvalidHorizonError("tau must be positive");

  const double span = tf - t0;
  const double n = span / tau;
  const double r = std::round(n);
  StepPlan plan;
  plan.tau = tau;
  if (r >= 1.0 && std::fabs(n - r) <= 1e-9 * r) {
    plan.count = static_cast<std::size_t>(r);
    plan.last_tau = tau;
  } else {
    plan.count = static_cast<std::size_t>(std::max(1.0, std::ceil(n)));
    plan.last_tau = span - static_cast<double>(plan.count - 1) * tau;
  }
  return plan;
}

void require_unit(const Quaternion& q0, double tol) {
  if (!q0.is_unit(tol)) {
    throw NonUnitStateError("initial quaternion has norm " + std::to_string(q0.norm()));
  }
}

}  // namespace qkde
