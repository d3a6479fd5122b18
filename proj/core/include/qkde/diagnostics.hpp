#pragma once

// Verification instruments: norm histories, orthogonality and symplecticity
// defects, errors against closed-form oracles, convergence-order estimates.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qkde/linalg.hpp"
#include "qkde/model.hpp"
#include "qkde/trajectory.hpp"

namespace qkde {

struct NormSample {
  double t = 0.0;
  double norm = 0.0;
};

std::vector<NormSample> norm_history(const Trajectory& traj);

/// max_k | |q_k| - 1 |
double max_norm_deviation(const Trajectory& traj);

/// |G^T G - I|_F
double orthogonality_defect(const Mat4& g);

/// |G^T J G - J|_F with J the standard 4x4 symplectic matrix.
double symplecticity_defect(const Mat4& g);

/// Matrix of a linear one-step map, recovered by stepping the basis vectors.
Mat4 one_step_matrix(const std::function<Quaternion(const Quaternion&)>& step);

struct ErrorReport {
  std::array<double, 4> max_component_error{};
  /// max | |q_a| - |q_b| |; equals max | |q| - 1 | against a unit oracle.
  double max_norm_deviation = 0.0;
  double time_of_max_error = 0.0;
  std::size_t sample_count = 0;

  double max_error() const;
};

using Oracle = std::function<Quaternion(double)>;

/// Oracle evaluated exactly at the trajectory timestamps.
ErrorReport component_errors(const Trajectory& traj, const Oracle& oracle);

/// Symmetric in `a` and `b`. Throws PreconditionError on length mismatch.
ErrorReport component_errors(std::span<const double> times, std::span<const Quaternion> a,
                             std::span<const Quaternion> b);

struct LadderPoint {
  double tau = 0.0;
  double value = 0.0;
};

/// (tau, value) pairs with tau halving at each entry.
struct DefectSeries {
  std::vector<LadderPoint> points;
  /// Mean log2 ratio of successive values; empty when a value is zero.
  std::optional<double> estimated_order;
};

/// Mean of log2(e(tau) / e(tau/2)) over successive pairs.
/// Throws PreconditionError for < 2 entries or taus not halving, and
/// DegenerateError if any error is zero.
double convergence_order(std::span<const LadderPoint> errors);

/// Evaluates `f` at tau0, tau0/2, ..., tau0/2^halvings.
DefectSeries make_ladder(const std::function<double(double)>& f, double tau0, int halvings = 4);

/// Gap between the exact half-angle rotation and its Cayley approximation:
/// max(|cos(x/2) - cos(2 atan(x/4))|, |sin(x/2) - sin(2 atan(x/4))|), x >= 0.
double euler_formula_gap(double x);

struct SeriesSample {
  double t = 0.0;
  double value = 0.0;
};

/// Least-squares fit of a cos(wt) + b sin(wt); returns the RMS residual.
/// Needs >= 8 samples; throws DegenerateError when all values are equal or
/// the fit basis is singular (w = 0).
double cosine_fit_residual(std::span<const SeriesSample> series, double omega);

/// Extracts component i as a series.
std::vector<SeriesSample> component_series(const Trajectory& traj, std::size_t i);

/// Drift of e0^2 + e1^2 and e2^2 + e3^2 after the first sample at or after
/// t_check, measured against their values at that sample.
struct SubNormDrift {
  double pair01 = 0.0;
  double pair23 = 0.0;
};

SubNormDrift subnorm_drift(const Trajectory& traj, double t_check);

}  // namespace qkde
