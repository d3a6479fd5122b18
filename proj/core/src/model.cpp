#include "qkde/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qkde {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vec3 interpolate(const profile::Tabulated& tab, double t) {
  const auto& ts = tab.times;
  if (!(t >= ts.front() && t <= ts.back())) {
    throw OutOfRangeError("t = " + std::to_string(t) + " outside tabulated range [" +
                          std::to_string(ts.front()) + ", " + std::to_string(ts.back()) + "]");
  }
  auto hi = std::upper_bound(ts.begin(), ts.end(), t);
  if (hi == ts.end()) return tab.values.back();
  const auto i = static_cast<std::size_t>(hi - ts.begin());
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return tab.values[i - 1] + w * (tab.values[i] - tab.values[i - 1]);
}

}  // namespace

AngularVelocityProfile AngularVelocityProfile::constant(const Vec3& omega) {
  if (!all_finite(omega)) throw PreconditionError("constant profile: non-finite omega");
  return AngularVelocityProfile(profile::Constant{omega});
}

AngularVelocityProfile AngularVelocityProfile::coning(double omega0, double beta) {
  if (omega0 == 0.0 || !std::isfinite(omega0)) {
    throw PreconditionError("coning profile: omega0 must be finite and nonzero");
  }
  if (!std::isfinite(beta)) throw PreconditionError("coning profile: beta must be finite");
  return AngularVelocityProfile(profile::Coning{omega0, beta});
}

AngularVelocityProfile AngularVelocityProfile::tabulated(
    std::vector<std::pair<double, Vec3>> samples) {
  if (samples.size() < 2) throw PreconditionError("tabulated profile: need at least 2 samples");
  profile::Tabulated tab;
  tab.times.reserve(samples.size());
  tab.values.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [t, w] = samples[i];
    if (!std::isfinite(t) || !all_finite(w)) {
      throw PreconditionError("tabulated profile: non-finite sample " + std::to_string(i));
    }
    if (i > 0 && !(t > tab.times.back())) {
      throw PreconditionError("tabulated profile: times not strictly increasing at sample " +
                              std::to_string(i));
    }
    tab.times.push_back(t);
    tab.values.push_back(w);
  }
  return AngularVelocityProfile(std::move(tab));
}

const Vec3* AngularVelocityProfile::constant_value() const {
  if (const auto* c = std::get_if<profile::Constant>(&v_)) return &c->omega;
  return nullptr;
}

std::string_view AngularVelocityProfile::kind() const {
  return std::visit(Overloaded{
                        [](const profile::Constant&) { return std::string_view("constant"); },
                        [](const profile::Fig1b&) { return std::string_view("fig1b"); },
                        [](const profile::Fig1c&) { return std::string_view("fig1c"); },
                        [](const profile::Fig1d&) { return std::string_view("fig1d"); },
                        [](const profile::Fig2&) { return std::string_view("fig2"); },
                        [](const profile::Coning&) { return std::string_view("coning"); },
                        [](const profile::Tabulated&) { return std::string_view("tabulated"); },
                    },
                    v_);
}

Mat4 coefficient_matrix(const Vec3& w) {
  return Mat4::from_rows({
      {0.0, -w[0], -w[1], -w[2]},
      {w[0], 0.0, w[2], -w[1]},
      {w[1], -w[2], 0.0, w[0]},
      {w[2], w[1], -w[0], 0.0},
  });
}

Vec3 omega_at(const AngularVelocityProfile& p, double t) {
  return std::visit(
      Overloaded{
          [](const profile::Constant& c) { return c.omega; },
          [t](const profile::Fig1b&) {
            return Vec3{{2.0 * (1.0 + std::sin(t) * std::exp(-t / 4.0)), 0.0, 0.0}};
          },
          [t](const profile::Fig1c&) {
            return Vec3{{2.0 * (1.0 + std::sin(t) * std::exp(-t / 4.0)),
                         (t * t - 3.0) * std::exp(-t / 3.0), (1.0 + t) * std::exp(-t)}};
          },
          [t](const profile::Fig1d&) {
            return Vec3{{std::sin(10.0 * t) - 2.0, 2.0 * t + 1.4, 4.0 - 0.2 * std::cos(3.0 * t)}};
          },
          [t](const profile::Fig2&) {
            return Vec3{{std::sin(10.0 * t) - 2.0, 2.0 * std::sin(t) + 1.4,
                         4.0 - 0.2 * std::cos(3.0 * t)}};
          },
          [t](const profile::Coning& c) {
            const double w0 = c.omega0;
            const double sb = std::sin(c.beta);
            return Vec3{{-w0 * (1.0 - std::cos(c.beta)), -w0 * sb * std::sin(w0 * t),
                         w0 * sb * std::cos(w0 * t)}};
          },
          [t](const profile::Tabulated& tab) { return interpolate(tab, t); },
      },
      p.variant());
}

Vec3 midpoint_omega(const AngularVelocityProfile& p, double t_k, double tau,
                    MidpointSamplingMode mode) {
  if (!(tau > 0.0)) throw PreconditionError("midpoint_omega: tau must be positive");
  if (const Vec3* c = p.constant_value()) return *c;
  switch (mode) {
    case MidpointSamplingMode::Exact:
      return omega_at(p, t_k + 0.5 * tau);
    case MidpointSamplingMode::LinearInterp: {
      const Vec3 w0 = omega_at(p, t_k);
      const Vec3 w1 = omega_at(p, t_k + tau);
      return w0 + 0.5 * (w1 - w0);
    }
  }
  throw PreconditionError("midpoint_omega: unknown sampling mode");
}

Mat4 analytic_constant_transition(const Vec3& omega, double tau) {
  const double n = norm(omega);
  if (n == 0.0) return Mat4::identity();
  const double half = 0.5 * n * tau;
  return std::cos(half) * Mat4::identity() + (std::sin(half) / n) * coefficient_matrix(omega);
}

Mat4 series_matrix_exponential(const Mat4& m) {
  int squarings = 0;
  double scale = 1.0;
  for (double nrm = frobenius_norm(m); nrm * scale > 0.5; scale *= 0.5) ++squarings;
  const Mat4 x = scale * m;

  Mat4 sum = Mat4::identity();
  Mat4 term = Mat4::identity();
  for (int k = 1; k < 200; ++k) {
    term = (1.0 / k) * (term * x);
    sum = sum + term;
    if (frobenius_norm(term) < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Quaternion coning_analytic_state(double omega0, double beta, double t) {
  const double s = std::sin(0.5 * beta);
  return Quaternion(std::cos(0.5 * beta), 0.0, s * std::cos(omega0 * t), s * std::sin(omega0 * t));
}

}  // namespace qkde
