#include "qkde/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qkde {

std::vector<NormSample> norm_history(const Trajectory& traj) {
  std::vector<NormSample> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) out.push_back({traj.times[k], traj.states[k].norm()});
  return out;
}

double max_norm_deviation(const Trajectory& traj) {
  double dev = 0.0;
  for (const auto& q : traj.states) dev = std::max(dev, std::fabs(q.norm() - 1.0));
  return dev;
}

double orthogonality_defect(const Mat4& g) {
  return frobenius_norm(transpose(g) * g - Mat4::identity());
}

double symplecticity_defect(const Mat4& g) {
  constexpr Mat4 j = symplectic_j4();
  return frobenius_norm(transpose(g) * j * g - j);
}

Mat4 one_step_matrix(const std::function<Quaternion(const Quaternion&)>& step) {
  Mat4 m;
  for (std::size_t j = 0; j < 4; ++j) {
    Vec4 e;
    e[j] = 1.0;
    const Quaternion col = step(Quaternion(e));
    for (std::size_t i = 0; i < 4; ++i) m(i, j) = col[i];
  }
  return m;
}

double ErrorReport::max_error() const {
  return *std::max_element(max_component_error.begin(), max_component_error.end());
}

ErrorReport component_errors(std::span<const double> times, std::span<const Quaternion> a,
                             std::span<const Quaternion> b) {
  if (times.size() != a.size() || a.size() != b.size()) {
    throw PreconditionError("component_errors: length mismatch");
  }
  ErrorReport r;
  r.sample_count = a.size();
  double worst = -1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double step_worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double e = std::fabs(a[k][i] - b[k][i]);
      r.max_component_error[i] = std::max(r.max_component_error[i], e);
      step_worst = std::max(step_worst, e);
    }
    if (step_worst > worst) {
      worst = step_worst;
      r.time_of_max_error = times[k];
    }
    r.max_norm_deviation = std::max(r.max_norm_deviation, std::fabs(a[k].norm() - b[k].norm()));
  }
  return r;
}

ErrorReport component_errors(const Trajectory& traj, const Oracle& oracle) {
  std::vector<Quaternion> expected;
  expected.reserve(traj.size());
  for (double t : traj.times) expected.push_back(oracle(t));
  return component_errors(traj.times, traj.states, expected);
}

double convergence_order(std::span<const LadderPoint> errors) {
  if (errors.size() < 2) throw PreconditionError("convergence_order: need at least 2 entries");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i + 1].tau / errors[i].tau;
    if (std::fabs(ratio - 0.5) > 1e-12) {
      throw PreconditionError("convergence_order: tau must halve between entries");
    }
    if (errors[i].value == 0.0 || errors[i + 1].value == 0.0) {
      throw DegenerateError("convergence_order: zero error at entry " + std::to_string(i));
    }
    sum += std::log2(errors[i].value / errors[i + 1].value);
  }
  return sum / static_cast<double>(errors.size() - 1);
}

DefectSeries make_ladder(const std::function<double(double)>& f, double tau0, int halvings) {
  if (!(tau0 > 0.0) || halvings < 1) throw PreconditionError("make_ladder: bad ladder shape");
  DefectSeries s;
  double tau = tau0;
  for (int i = 0; i <= halvings; ++i, tau *= 0.5) s.points.push_back({tau, f(tau)});
  const bool any_zero =
      std::any_of(s.points.begin(), s.points.end(), [](const LadderPoint& p) { return p.value == 0.0; });
  if (!any_zero) s.estimated_order = convergence_order(s.points);
  return s;
}

double euler_formula_gap(double x) {
  if (!(x >= 0.0)) throw PreconditionError("euler_formula_gap: x must be non-negative");
  const double exact = 0.5 * x;
  const double cayley = 2.0 * std::atan(0.25 * x);
  return std::max(std::fabs(std::cos(exact) - std::cos(cayley)),
                  std::fabs(std::sin(exact) - std::sin(cayley)));
}

double cosine_fit_residual(std::span<const SeriesSample> series, double omega) {
  if (series.size() < 8) throw PreconditionError("cosine_fit_residual: need at least 8 samples");
  const double first = series.front().value;
  if (std::all_of(series.begin(), series.end(),
                  [first](const SeriesSample& s) { return s.value == first; })) {
    throw DegenerateError("cosine_fit_residual: all samples equal");
  }

  Mat2 normal;
  Vec2 rhs;
  for (const auto& s : series) {
    const double c = std::cos(omega * s.t);
    const double sn = std::sin(omega * s.t);
    normal(0, 0) += c * c;
    normal(0, 1) += c * sn;
    normal(1, 1) += sn * sn;
    rhs[0] += s.value * c;
    rhs[1] += s.value * sn;
  }
  normal(1, 0) = normal(0, 1);

  Vec2 coef;
  try {
    coef = solve_linear<2>(normal, rhs, 1e-12 * static_cast<double>(series.size()));
  } catch (const SingularMatrixError&) {
    throw DegenerateError("cosine_fit_residual: singular fit basis");
  }

  double ss = 0.0;
  for (const auto& s : series) {
    const double r = s.value - coef[0] * std::cos(omega * s.t) - coef[1] * std::sin(omega * s.t);
    ss += r * r;
  }
  return std::sqrt(ss / static_cast<double>(series.size()));
}

std::vector<SeriesSample> component_series(const Trajectory& traj, std::size_t i) {
  std::vector<SeriesSample> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) out.push_back({traj.times[k], traj.states[k][i]});
  return out;
}

SubNormDrift subnorm_drift(const Trajectory& traj, double t_check) {
  auto it = std::lower_bound(traj.times.begin(), traj.times.end(), t_check);
  if (it == traj.times.end()) {
    throw PreconditionError("subnorm_drift: t_check beyond the trajectory");
  }
  const auto start = static_cast<std::size_t>(it - traj.times.begin());
  auto p01 = [](const Quaternion& q) { return q.e0() * q.e0() + q.e1() * q.e1(); };
  auto p23 = [](const Quaternion& q) { return q.e2() * q.e2() + q.e3() * q.e3(); };
  const double ref01 = p01(traj.states[start]);
  const double ref23 = p23(traj.states[start]);
  SubNormDrift d;
  for (std::size_t k = start; k < traj.size(); ++k) {
    d.pair01 = std::max(d.pair01, std::fabs(p01(traj.states[k]) - ref01));
    d.pair23 = std::max(d.pair23, std::fabs(p23(traj.states[k]) - ref23));
  }
  return d;
}

}  // namespace qkde
