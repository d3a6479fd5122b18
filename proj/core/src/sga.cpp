#include "qkde/sga.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qkde {

double step_guideline(const Vec3& omega) {
  const double n = norm(omega);
  return n == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (5.0 * n);
}

AutonomousTransition autonomous_transition(const Vec3& omega, double tau) {
  if (!std::isfinite(tau) || !all_finite(omega)) {
    throw PreconditionError("autonomous_transition: non-finite input");
  }
  const double n2 = dot(omega, omega);
  AutonomousTransition tr;
  tr.tau = tau;
  tr.omega = omega;
  tr.alpha = tau * tau * n2 / 16.0;
  tr.theta = 2.0 * std::atan(tau * std::sqrt(n2) / 4.0);
  tr.g = (1.0 / (1.0 + tr.alpha)) *
         ((1.0 - tr.alpha) * Mat4::identity() + (0.5 * tau) * coefficient_matrix(omega));
  tr.exceeds_step_guideline = std::fabs(tau) > step_guideline(omega);
  return tr;
}

Mat4 b_matrix(const Vec3& omega_k, double tau) {
  const double n2 = dot(omega_k, omega_k);
  const double c = -(tau * tau / 96.0) * omega_k[1] * n2;
  return 0.5 * coefficient_matrix(omega_k) + c * symplectic_j4();
}

NonAutonomousStepCoefficients nonautonomous_transition(const Vec3& omega_k, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw PreconditionError("nonautonomous_transition: tau must be positive and finite");
  }
  if (!all_finite(omega_k)) throw PreconditionError("nonautonomous_transition: non-finite omega");

  NonAutonomousStepCoefficients s;
  const double n2 = dot(omega_k, omega_k);
  s.omega = omega_k;
  s.tau = tau;
  s.omega2 = omega_k[1];
  s.j_coefficient = -(tau * tau / 96.0) * s.omega2 * n2;
  s.gamma_sq = 0.25 * n2 - s.j_coefficient * s.omega2 + s.j_coefficient * s.j_coefficient;
  s.alpha = 0.25 * tau * tau * s.gamma_sq;
  s.theta = 2.0 * std::atan(0.5 * tau * std::sqrt(s.gamma_sq));
  s.generator = b_matrix(omega_k, tau);

  const double defect =
      frobenius_norm(s.generator * s.generator + s.gamma_sq * Mat4::identity());
  if (defect > 1e-10 * (1.0 + s.gamma_sq)) {
    throw ConsistencyError("B_k^2 + gamma_k^2 I has Frobenius norm " + std::to_string(defect));
  }
  s.g = (1.0 / (1.0 + s.alpha)) * ((1.0 - s.alpha) * Mat4::identity() + tau * s.generator);
  return s;
}

Mat2 reduced_2x2_transition(double omega1_mid, double tau) {
  const double theta = 2.0 * std::atan(omega1_mid * tau / 4.0);
  return std::cos(theta) * Mat2::identity() - std::sin(theta) * symplectic_j2();
}

Trajectory integrate_autonomous(const Vec3& omega, const Quaternion& q0, double t0, double tf,
                                double tau) {
  const StepPlan plan = plan_steps(t0, tf, tau);
  require_unit(q0);

  Trajectory traj;
  traj.t0 = t0;
  traj.tau = tau;
  traj.times.reserve(plan.count + 1);
  traj.states.reserve(plan.count + 1);
  traj.steps.reserve(plan.count);
  traj.times.push_back(t0);
  traj.states.push_back(q0);

  const AutonomousTransition full = autonomous_transition(omega, tau);
  Quaternion q = q0;
  for (std::size_t k = 0; k < plan.count; ++k) {
    const double h = plan.step_length(k);
    const AutonomousTransition tr = h == tau ? full : autonomous_transition(omega, h);
    q = tr.g * q;
    traj.times.push_back(t0 + static_cast<double>(k) * tau + h);
    traj.states.push_back(q);
    traj.steps.push_back({h, tr.alpha, tr.theta});
  }
  return traj;
}

Trajectory integrate_nonautonomous(const AngularVelocityProfile& profile, const Quaternion& q0,
                                   double t0, double tf, double tau, MidpointSamplingMode mode) {
  const StepPlan plan = plan_steps(t0, tf, tau);
  require_unit(q0);

  Trajectory traj;
  traj.t0 = t0;
  traj.tau = tau;
  traj.times.reserve(plan.count + 1);
  traj.states.reserve(plan.count + 1);
  traj.steps.reserve(plan.count);
  traj.times.push_back(t0);
  traj.states.push_back(q0);

  Quaternion q = q0;
  for (std::size_t k = 0; k < plan.count; ++k) {
    const double h = plan.step_length(k);
    const double t_k = t0 + static_cast<double>(k) * tau;
    const NonAutonomousStepCoefficients s =
        nonautonomous_transition(midpoint_omega(profile, t_k, h, mode), h);
    q = s.g * q;
    traj.times.push_back(t_k + h);
    traj.states.push_back(q);
    traj.steps.push_back({h, s.alpha, s.theta});
  }
  return traj;
}

}  // namespace qkde
