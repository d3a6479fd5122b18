#pragma once

// Reference computations used only by tests. Nothing here calls into the
// library's numerics, so agreement is a genuine cross-check.

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "qkde/linalg.hpp"
#include "qkde/model.hpp"

namespace qkde::testing {

using Q = std::array<double, 4>;

inline Q hamilton(const Q& a, const Q& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

/// Flow of dq/dt = q (x) (0, w)/2 for constant w: right-multiplication by the
/// rotation quaternion exp((0, w) t / 2).
inline Q constant_rate_flow(const Q& q0, double w1, double w2, double w3, double t) {
  const double n = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
  if (n == 0.0) return q0;
  const double h = 0.5 * n * t;
  const double s = std::sin(h) / n;
  return hamilton(q0, {std::cos(h), w1 * s, w2 * s, w3 * s});
}

inline Q to_q(const Quaternion& q) { return {q[0], q[1], q[2], q[3]}; }

inline double max_diff(const Q& a, const Quaternion& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

/// Dense 4x4 inverse by Gauss-Jordan with full pivoting.
inline std::array<std::array<double, 4>, 4> gauss_jordan_inverse(std::array<std::array<double, 4>, 4> m) {
  std::array<std::array<double, 8>, 4> aug{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) aug[i][j] = m[i][j];
    aug[i][4 + i] = 1.0;
  }
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::fabs(aug[r][c]) > std::fabs(aug[p][c])) p = r;
    std::swap(aug[p], aug[c]);
    const double d = aug[c][c];
    for (auto& v : aug[c]) v /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const double f = aug[r][c];
      for (int j = 0; j < 8; ++j) aug[r][j] -= f * aug[c][j];
    }
  }
  std::array<std::array<double, 4>, 4> inv{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) inv[i][j] = aug[i][4 + j];
  return inv;
}

/// The kinematics right-hand side written out component-wise.
inline Q kinematics_rhs(const Q& q, double w1, double w2, double w3) {
  return {0.5 * (-w1 * q[1] - w2 * q[2] - w3 * q[3]), 0.5 * (w1 * q[0] + w3 * q[2] - w2 * q[3]),
          0.5 * (w2 * q[0] - w3 * q[1] + w1 * q[3]), 0.5 * (w3 * q[0] + w2 * q[1] - w1 * q[2])};
}

/// Fine-step classical RK4 reference for a rate given as a closure.
inline Q reference_solution(const std::function<std::array<double, 3>(double)>& w, Q q, double t0,
                            double tf, int steps) {
  const double h = (tf - t0) / steps;
  auto f = [&](double t, const Q& x) {
    const auto r = w(t);
    return kinematics_rhs(x, r[0], r[1], r[2]);
  };
  auto axpy = [](const Q& x, double a, const Q& y) {
    return Q{x[0] + a * y[0], x[1] + a * y[1], x[2] + a * y[2], x[3] + a * y[3]};
  };
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const Q k1 = f(t, q);
    const Q k2 = f(t + h / 2, axpy(q, h / 2, k1));
    const Q k3 = f(t + h / 2, axpy(q, h / 2, k2));
    const Q k4 = f(t + h, axpy(q, h, k3));
    for (int i = 0; i < 4; ++i) q[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return q;
}

inline Vec3 random_omega(std::mt19937_64& rng, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3{{u(rng), u(rng), u(rng)}};
}

inline Mat4 random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat4 m;
  for (auto& v : m.a) v = u(rng);
  return m;
}

}  // namespace qkde::testing
