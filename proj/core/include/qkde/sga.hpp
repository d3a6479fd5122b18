#pragma once

// Symplectic geometric integrators for the quaternion kinematics equation.
//
// Both single-step maps are Cayley transforms phi(x M) = (I - xM)^{-1}(I + xM)
// of a skew matrix M with M^2 = -gamma^2 I, evaluated in closed form:
//
//   phi(x M) = [(1 - alpha) I + 2x M] / (1 + alpha),   alpha = x^2 gamma^2
//            = cos(theta) I + sin(theta) M / gamma,    theta = 2 atan(x gamma)
//
// Constant rate:    x = tau/4, M = A(omega),        gamma = |omega|
// Time-varying:     x = tau/2, M = B_k,             gamma = gamma_k
//   B_k = A(omega_k)/2 + c_k J,  c_k = -(tau^2/96) omega2_k |omega_k|^2
//   gamma_k^2 = |omega_k|^2/4 - c_k omega2_k + c_k^2
// where omega_k is the rate sampled at the step midpoint.
//
// The maps are orthogonal, so the quaternion norm is preserved up to rounding.
// No renormalization is ever applied.

#include <cmath>
#include <string>

#include "qkde/linalg.hpp"
#include "qkde/model.hpp"
#include "qkde/trajectory.hpp"

namespace qkde {

/// Closed-form Cayley transform phi(x M) for skew M with M^2 = -gamma^2 I.
/// Throws PreconditionError naming the failed check: gamma > 0, M skew to
/// 1e-12, |M^2 + gamma^2 I|_F <= 1e-10 (1 + gamma^2).
template <std::size_t N>
Mat<N> cayley_closed_form(double x, const Mat<N>& m, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw PreconditionError("cayley_closed_form: gamma must be positive and finite");
  }
  if (frobenius_norm(transpose(m) + m) > 1e-12) {
    throw PreconditionError("cayley_closed_form: M is not skew-symmetric");
  }
  const double g2 = gamma * gamma;
  if (frobenius_norm(m * m + g2 * Mat<N>::identity()) > 1e-10 * (1.0 + g2)) {
    throw PreconditionError("cayley_closed_form: M^2 != -gamma^2 I");
  }
  const double alpha = x * x * g2;
  return (1.0 / (1.0 + alpha)) * ((1.0 - alpha) * Mat<N>::identity() + (2.0 * x) * m);
}

/// Constant-rate single-step map.
struct AutonomousTransition {
  Mat4 g;
  double alpha = 0.0;  // tau^2 |omega|^2 / 16
  double theta = 0.0;  // 2 atan(tau |omega| / 4)
  double tau = 0.0;
  Vec3 omega;
  /// tau > 1/(5|omega|): the map is still orthogonal, but the phase error
  /// against the exact flow is no longer below ~1.25e-4 per step.
  bool exceeds_step_guideline = false;
};

/// Largest step for which the Cayley phase stays within ~1.25e-4 of the
/// exact rotation; +inf for omega = 0.
double step_guideline(const Vec3& omega);

AutonomousTransition autonomous_transition(const Vec3& omega, double tau);

/// Skew generator B_k for a midpoint rate sample omega_k.
Mat4 b_matrix(const Vec3& omega_k, double tau);

/// Coefficients of one time-varying step.
struct NonAutonomousStepCoefficients {
  Vec3 omega;                 // midpoint rate sample
  double omega2 = 0.0;        // its second component, the J-coupling rate
  double j_coefficient = 0.0; // c_k: coefficient of J in B_k
  double gamma_sq = 0.0;
  double alpha = 0.0;         // tau^2 gamma^2 / 4
  double theta = 0.0;         // 2 atan(tau gamma / 2)
  double tau = 0.0;
  Mat4 generator;             // B_k
  Mat4 g;                     // G_k
};

/// Throws PreconditionError for tau <= 0 and ConsistencyError if
/// |B_k^2 + gamma_k^2 I|_F exceeds 1e-10 (1 + gamma_k^2).
NonAutonomousStepCoefficients nonautonomous_transition(const Vec3& omega_k, double tau);

/// Transition restricted to the (e0, e1) plane when omega2 = omega3 = 0:
/// cos(theta) I2 - sin(theta) J2 with theta = 2 atan(omega1 tau / 4).
Mat2 reduced_2x2_transition(double omega1_mid, double tau);

/// Constant-rate integration; the full-step map is built once.
/// Throws InvalidHorizonError / NonUnitStateError.
Trajectory integrate_autonomous(const Vec3& omega, const Quaternion& q0, double t0, double tf,
                                double tau);

/// Time-varying integration with one midpoint-sampled map per step.
Trajectory integrate_nonautonomous(const AngularVelocityProfile& profile, const Quaternion& q0,
                                   double t0, double tf, double tau,
                                   MidpointSamplingMode mode = MidpointSamplingMode::Exact);

}  // namespace qkde
