#pragma once

// Reference integrators applied to dq/dt = (1/2) A(omega(t)) q. They are the
// comparison points for the symplectic maps and share their step schedule.

#include <string_view>

#include "qkde/model.hpp"
#include "qkde/trajectory.hpp"

namespace qkde {

enum class BaselineMethod {
  Rk4,             // classical explicit four-stage Runge-Kutta
  EulerBackward,   // implicit Euler, rate sampled at t + tau
  GaussLegendre2,  // two-stage Gauss-Legendre collocation, order 4
};

std::string_view to_string(BaselineMethod m);

Quaternion rk4_step(const AngularVelocityProfile& profile, const Quaternion& q, double t,
                    double tau);

/// Solves (I - (tau/2) A(omega(t + tau))) q+ = q.
Quaternion euler_backward_step(const AngularVelocityProfile& profile, const Quaternion& q,
                               double t, double tau);

/// Both stage equations are linear in the stage slopes and are solved together
/// as one 8x8 system.
Quaternion gauss_legendre_step(const AngularVelocityProfile& profile, const Quaternion& q,
                               double t, double tau);

Quaternion baseline_step(BaselineMethod method, const AngularVelocityProfile& profile,
                         const Quaternion& q, double t, double tau);

Trajectory integrate_baseline(BaselineMethod method, const AngularVelocityProfile& profile,
                              const Quaternion& q0, double t0, double tf, double tau);

}  // namespace qkde
