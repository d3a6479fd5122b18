#pragma once

// Declarative experiment runner: JSON scenario configs, integration runs,
// step-size sweeps, and CSV/JSON output.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qkde/diagnostics.hpp"
#include "qkde/model.hpp"
#include "qkde/trajectory.hpp"

namespace qkde {

enum class Method {
  SgaAutonomous,     // "SGA-A", constant profiles only
  SgaNonAutonomous,  // "SGA-NA"
  Rk4,               // "RK4"
  EulerBackward,     // "EUB"
  GaussLegendre2,    // "GL2"
};

std::string_view to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

namespace oracle_kind {
struct None {};
struct ConstantAnalytic {};
struct Coning {
  double omega0;
  double beta;
};
}  // namespace oracle_kind

using OracleKind = std::variant<oracle_kind::None, oracle_kind::ConstantAnalytic, oracle_kind::Coning>;

enum class OutputKind { Series, ErrorReport, DefectLadder, Benchmark };

struct ScenarioConfig {
  std::string name;
  /// Registry key, or "constant" / "coning" / "tabulated" / fig name for
  /// inline profile objects.
  std::string profile_key;
  AngularVelocityProfile profile;
  Quaternion q0;
  double t0 = 0.0;
  double tf = 10.0;
  double tau = 0.01;
  Method method = Method::SgaNonAutonomous;
  MidpointSamplingMode sampling = MidpointSamplingMode::Exact;
  OracleKind oracle;
  std::vector<OutputKind> outputs;
  int ladder_halvings = 4;
  std::optional<double> subnorm_check_start;
  /// Output directory; empty means no files are written.
  std::string out;

  bool wants(OutputKind k) const;
  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct RegistryEntry {
  std::string_view name;
  std::string_view description;
  double default_span;  // tf - t0 when the config omits tf
};

/// Frozen scenario names: fig1a, fig1b, fig1c, fig1d, fig2, coning.
std::span<const RegistryEntry> scenario_registry();

/// Throws ConfigError for unknown names.
AngularVelocityProfile registry_profile(std::string_view name);

/// Parses "pi", "pi/N", "k*pi", "k*pi/N" (optional leading '-').
/// Throws ConfigError on anything else.
double parse_angle_expression(std::string_view text);

/// Parses a JSON scenario document and applies defaults:
///   q0        [1,0,0,0], or the analytic initial state for coning profiles
///   method    SGA-A for constant profiles, SGA-NA otherwise
///   oracle    constant-analytic / coning wired from the profile when absent
///   tf        t0 + registry default span (t0 + 10 for inline profiles)
/// Throws ConfigError with line/column on malformed JSON, and naming the field
/// on invalid content. Unknown keys are rejected.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

struct ConfigOverrides {
  std::optional<double> tau;
  std::optional<double> t0;
  std::optional<double> tf;
  std::optional<Method> method;
  std::optional<MidpointSamplingMode> sampling;
  std::optional<std::string> out;
};

/// Applies command-line overrides and revalidates.
void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& o);

/// Oracle built from cfg.oracle; empty for None.
std::optional<Oracle> make_oracle(const ScenarioConfig& cfg);

/// Integration only: transition construction and stepping.
Trajectory integrate(const ScenarioConfig& cfg);

struct Timing {
  double wall_clock_s = 0.0;
  std::size_t steps = 0;
  std::size_t repeats = 0;
};

struct RunArtifacts {
  ScenarioConfig config;
  Trajectory trajectory;
  std::optional<ErrorReport> errors;
  std::optional<DefectSeries> defect_ladder;  // symplecticity defect of the first step map
  std::optional<DefectSeries> error_ladder;   // max component error vs oracle
  std::optional<SubNormDrift> subnorms;
  Timing timing;
  bool benchmarked = false;
};

/// Wall-clock covers integrate() only. With the benchmark output requested the
/// integration is repeated max(3, until 200 ms) times and the minimum is kept.
RunArtifacts run_scenario(const ScenarioConfig& cfg);

std::vector<RunArtifacts> run_sweep(const ScenarioConfig& base, std::span<const double> taus);

/// One run per (method, tau), method-major.
std::vector<RunArtifacts> run_sweep(const ScenarioConfig& base, std::span<const Method> methods,
                                    std::span<const double> taus);

/// Locale-independent %.17g formatting; parses back to the same double.
std::string format_double(double v);

/// CSV: header t,e0,e1,e2,e3,norm plus err0..err3 (absolute errors) when the
/// run has an oracle. LF line endings.
std::string series_csv(const RunArtifacts& run);
void emit_series(const RunArtifacts& run, const std::filesystem::path& path);

/// JSON summary with one entry per run and, for sweeps, per-method
/// convergence estimates across halving taus.
std::string summary_json(std::span<const RunArtifacts> runs);
void emit_summary(std::span<const RunArtifacts> runs, const std::filesystem::path& path);

}  // namespace qkde
