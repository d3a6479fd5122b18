#pragma once

#include <cstddef>
#include <vector>

#include "qkde/model.hpp"

namespace qkde {

/// Per-step parameters of a Cayley-type transition, kept for diagnostics.
struct StepRecord {
  double tau = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
};

/// Time-stamped states; states[k] is the attitude at times[k]. times[0] == t0
/// and states[0] is the initial quaternion. `steps` is empty for integrators
/// that do not produce per-step records.
struct Trajectory {
  double t0 = 0.0;
  double tau = 0.0;
  std::vector<double> times;
  std::vector<Quaternion> states;
  std::vector<StepRecord> steps;

  std::size_t size() const { return states.size(); }
  const Quaternion& final_state() const { return states.back(); }
};

/// Step schedule shared by every integrator: `count` steps, all of length tau
/// except the last, which has length `last_tau` (== tau unless the horizon is
/// not a multiple of tau).
struct StepPlan {
  std::size_t count = 0;
  double tau = 0.0;
  double last_tau = 0.0;

  double step_length(std::size_t k) const { return k + 1 == count ? last_tau : tau; }
};

/// Horizons within 1e-9 (relative) of an integer number of steps snap to that
/// count; otherwise count = ceil((tf - t0) / tau) with a shortened final step.
/// Throws InvalidHorizonError unless tf > t0, tau > 0 and all are finite.
StepPlan plan_steps(double t0, double tf, double tau);

/// Throws NonUnitStateError when | |q0| - 1 | > tol.
void require_unit(const Quaternion& q0, double tol = kUnitNormTolerance);

}  // namespace qkde
