#include "qkde/baseline.hpp"

#include <cmath>

#include "qkde/linalg.hpp"

namespace qkde {
namespace {

void require_positive_step(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw PreconditionError("step must be positive");
}

Mat4 half_generator(const AngularVelocityProfile& p, double t) {
  return 0.5 * coefficient_matrix(omega_at(p, t));
}

// Gauss-Legendre two-stage tableau.
const double kSqrt3 = std::sqrt(3.0);
const double kC1 = 0.5 - kSqrt3 / 6.0;
const double kC2 = 0.5 + kSqrt3 / 6.0;
const double kA11 = 0.25;
const double kA12 = 0.25 - kSqrt3 / 6.0;
const double kA21 = 0.25 + kSqrt3 / 6.0;
const double kA22 = 0.25;

}  // namespace

std::string_view to_string(BaselineMethod m) {
  switch (m) {
    case BaselineMethod::Rk4:
      return "RK4";
    case BaselineMethod::EulerBackward:
      return "EUB";
    case BaselineMethod::GaussLegendre2:
      return "GL2";
  }
  return "?";
}

Quaternion rk4_step(const AngularVelocityProfile& p, const Quaternion& q, double t, double tau) {
  require_positive_step(tau);
  const Vec4 y = q.vec();
  const Mat4 f0 = half_generator(p, t);
  const Mat4 fm = half_generator(p, t + 0.5 * tau);
  const Mat4 f1 = half_generator(p, t + tau);
  const Vec4 k1 = f0 * y;
  const Vec4 k2 = fm * (y + (0.5 * tau) * k1);
  const Vec4 k3 = fm * (y + (0.5 * tau) * k2);
  const Vec4 k4 = f1 * (y + tau * k3);
  return Quaternion(y + (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

Quaternion euler_backward_step(const AngularVelocityProfile& p, const Quaternion& q, double t,
                               double tau) {
  require_positive_step(tau);
  const Mat4 lhs = Mat4::identity() - tau * half_generator(p, t + tau);
  return Quaternion(solve_linear_4(lhs, q.vec()));
}

Quaternion gauss_legendre_step(const AngularVelocityProfile& p, const Quaternion& q, double t,
                               double tau) {
  require_positive_step(tau);
  const Mat4 f1 = half_generator(p, t + kC1 * tau);
  const Mat4 f2 = half_generator(p, t + kC2 * tau);
  const Vec4 y = q.vec();

  // [I - tau a11 F1, -tau a12 F1; -tau a21 F2, I - tau a22 F2] [K1; K2] = [F1 y; F2 y]
  Mat<8> m = Mat<8>::identity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      m(i, j) -= tau * kA11 * f1(i, j);
      m(i, j + 4) = -tau * kA12 * f1(i, j);
      m(i + 4, j) = -tau * kA21 * f2(i, j);
      m(i + 4, j + 4) -= tau * kA22 * f2(i, j);
    }
  }
  const Vec4 r1 = f1 * y;
  const Vec4 r2 = f2 * y;
  Vec<8> rhs;
  for (std::size_t i = 0; i < 4; ++i) {
    rhs[i] = r1[i];
    rhs[i + 4] = r2[i];
  }
  const Vec<8> k = solve_linear<8>(m, rhs);

  Vec4 out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = y[i] + 0.5 * tau * (k[i] + k[i + 4]);
  return Quaternion(out);
}

Quaternion baseline_step(BaselineMethod method, const AngularVelocityProfile& p,
                         const Quaternion& q, double t, double tau) {
  switch (method) {
    case BaselineMethod::Rk4:
      return rk4_step(p, q, t, tau);
    case BaselineMethod::EulerBackward:
      return euler_backward_step(p, q, t, tau);
    case BaselineMethod::GaussLegendre2:
      return gauss_legendre_step(p, q, t, tau);
  }
  throw PreconditionError("unknown baseline method");
}

Trajectory integrate_baseline(BaselineMethod method, const AngularVelocityProfile& p,
                              const Quaternion& q0, double t0, double tf, double tau) {
  const StepPlan plan = plan_steps(t0, tf, tau);
  require_unit(q0);

  Trajectory traj;
  traj.t0 = t0;
  traj.tau = tau;
  traj.times.reserve(plan.count + 1);
  traj.states.reserve(plan.count + 1);
  traj.times.push_back(t0);
  traj.states.push_back(q0);

  Quaternion q = q0;
  for (std::size_t k = 0; k < plan.count; ++k) {
    const double h = plan.step_length(k);
    const double t_k = t0 + static_cast<double>(k) * tau;
    q = baseline_step(method, p, q, t_k, h);
    traj.times.push_back(t_k + h);
    traj.states.push_back(q);
  }
  return traj;
}

}  // namespace qkde
