#pragma once

// Quaternion kinematics model: dq/dt = (1/2) A(omega(t)) q.
//
// Holds the coefficient matrix, the catalogue of angular-velocity profiles
// used by the reproduction scenarios, midpoint sampling, and the closed-form
// oracles used to verify the integrators.

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qkde/linalg.hpp"

namespace qkde {

/// Default tolerance on | |q| - 1 | when a quaternion must be an attitude.
inline constexpr double kUnitNormTolerance = 1e-9;

/// Quaternion [e0, e1, e2, e3] with scalar part e0. Never renormalized
/// implicitly.
class Quaternion {
 public:
  constexpr Quaternion() : v_{{1.0, 0.0, 0.0, 0.0}} {}
  constexpr Quaternion(double e0, double e1, double e2, double e3) : v_{{e0, e1, e2, e3}} {}
  constexpr explicit Quaternion(const Vec4& v) : v_(v) {}

  static constexpr Quaternion identity() { return Quaternion{}; }

  constexpr double e0() const { return v_[0]; }
  constexpr double e1() const { return v_[1]; }
  constexpr double e2() const { return v_[2]; }
  constexpr double e3() const { return v_[3]; }
  constexpr double operator[](std::size_t i) const { return v_[i]; }

  constexpr const Vec4& vec() const { return v_; }
  double norm() const { return qkde::norm(v_); }

  bool is_unit(double tol = kUnitNormTolerance) const { return std::fabs(norm() - 1.0) <= tol; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

 private:
  Vec4 v_;
};

inline Quaternion operator*(const Mat4& g, const Quaternion& q) { return Quaternion(g * q.vec()); }

namespace profile {

struct Constant {
  Vec3 omega;
};
/// [2(1 + sin t e^{-t/4}), 0, 0]
struct Fig1b {};
/// [2(1 + sin t e^{-t/4}), (t^2 - 3) e^{-t/3}, (1 + t) e^{-t}]
struct Fig1c {};
/// [sin 10t - 2, 2t + 1.4, 4 - 0.2 cos 3t]
struct Fig1d {};
/// [sin 10t - 2, 2 sin t + 1.4, 4 - 0.2 cos 3t]
struct Fig2 {};
/// Precessing rate with closed-form attitude, see coning_analytic_state().
struct Coning {
  double omega0;
  double beta;
};
/// Piecewise-linear interpolant through strictly increasing sample times.
struct Tabulated {
  std::vector<double> times;
  std::vector<Vec3> values;
};

}  // namespace profile

class AngularVelocityProfile {
 public:
  using Variant = std::variant<profile::Constant, profile::Fig1b, profile::Fig1c, profile::Fig1d,
                               profile::Fig2, profile::Coning, profile::Tabulated>;

  /// Zero rate.
  AngularVelocityProfile() : v_(profile::Constant{}) {}

  static AngularVelocityProfile constant(const Vec3& omega);
  static AngularVelocityProfile fig1b() { return AngularVelocityProfile(profile::Fig1b{}); }
  static AngularVelocityProfile fig1c() { return AngularVelocityProfile(profile::Fig1c{}); }
  static AngularVelocityProfile fig1d() { return AngularVelocityProfile(profile::Fig1d{}); }
  static AngularVelocityProfile fig2() { return AngularVelocityProfile(profile::Fig2{}); }
  /// Throws PreconditionError when omega0 == 0.
  static AngularVelocityProfile coning(double omega0, double beta);
  /// Throws PreconditionError unless there are >= 2 samples with strictly
  /// increasing, finite times.
  static AngularVelocityProfile tabulated(std::vector<std::pair<double, Vec3>> samples);

  const Variant& variant() const { return v_; }

  /// The rate vector if this is a Constant profile.
  const Vec3* constant_value() const;
  std::string_view kind() const;

 private:
  explicit AngularVelocityProfile(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

enum class MidpointSamplingMode {
  Exact,         // evaluate the profile at t_k + tau/2
  LinearInterp,  // average of the endpoint samples (chord midpoint)
};

/// Skew-symmetric A(omega): first row [0, -w^T], first column [0, w],
/// lower-right block -[w]x. Satisfies A^2 = -|w|^2 I.
Mat4 coefficient_matrix(const Vec3& omega);

/// Throws OutOfRangeError for a Tabulated profile queried outside its samples.
Vec3 omega_at(const AngularVelocityProfile& profile, double t);

/// Rate used for the step [t_k, t_k + tau]. Throws PreconditionError if tau <= 0.
Vec3 midpoint_omega(const AngularVelocityProfile& profile, double t_k, double tau,
                    MidpointSamplingMode mode);

/// exp(A tau / 2) in closed form: cos(|w|tau/2) I + sin(|w|tau/2) A/|w|.
Mat4 analytic_constant_transition(const Vec3& omega, double tau);

/// Power-series matrix exponential with scaling and squaring. Terms are
/// summed until the term's Frobenius norm drops below 1e-18. Used only as an
/// independent oracle.
Mat4 series_matrix_exponential(const Mat4& m);

/// q(t) = [cos(b/2), 0, sin(b/2) cos(w0 t), sin(b/2) sin(w0 t)].
Quaternion coning_analytic_state(double omega0, double beta, double t);

}  // namespace qkde
