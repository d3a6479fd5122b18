// qkde: run quaternion-kinematics integration scenarios from JSON configs.
//
//   qkde run <config> [--tau T] [--t0 T] [--tf T] [--method M] [--sampling exact|interp] [--out DIR]
//   qkde sweep <config> [--taus a,b,...] [--methods M,...] [same overrides]
//   qkde gap <x>
//   qkde registry
//
// Exit codes: 0 success, 1 invalid configuration or arguments, 2 runtime error.

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif
#include "qkde/diagnostics.hpp"
#include "qkde/scenario.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct CommonArgs {
  std::string config;
  std::optional<double> tau;
  std::optional<double> t0;
  std::optional<double> tf;
  std::optional<std::string> method;
  std::optional<std::string> sampling;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("config", a.config, "Scenario JSON file")->required();
  cmd->add_option("--tau", a.tau, "Step size [s]");
  cmd->add_option("--t0", a.t0, "Initial time [s]");
  cmd->add_option("--tf", a.tf, "Final time [s]");
  cmd->add_option("--method", a.method, "SGA-A | SGA-NA | RK4 | EUB | GL2");
  cmd->add_option("--sampling", a.sampling, "Midpoint sampling: exact | interp")
      ->check(CLI::IsMember({"exact", "interp"}));
  cmd->add_option("--out", a.out, "Output directory");
}

qkde::ScenarioConfig load(const CommonArgs& a) {
  qkde::ScenarioConfig cfg = qkde::load_config(a.config);
  qkde::ConfigOverrides o;
  o.tau = a.tau;
  o.t0 = a.t0;
  o.tf = a.tf;
  o.out = a.out;
  if (a.method) {
    o.method = qkde::method_from_string(*a.method);
    if (!o.method) throw qkde::ConfigError("invalid field 'method': unknown method '" + *a.method + "'");
  }
  if (a.sampling) {
    o.sampling = *a.sampling == "exact" ? qkde::MidpointSamplingMode::Exact
                                        : qkde::MidpointSamplingMode::LinearInterp;
  }
  qkde::apply_overrides(cfg, o);
  return cfg;
}

// Shortest round-trip form, for file names and messages.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string series_name(const qkde::RunArtifacts& r, bool sweep) {
  if (!sweep) return r.config.name + ".csv";
  return r.config.name + "_" + std::string(qkde::to_string(r.config.method)) + "_tau" +
         shortest(r.config.tau) + ".csv";
}

void write_outputs(const std::vector<qkde::RunArtifacts>& runs, const std::string& out, bool sweep) {
  std::cout << qkde::summary_json(runs);
  if (out.empty()) return;
  std::filesystem::create_directories(out);
  const std::filesystem::path dir(out);
  for (const auto& r : runs) {
    if (r.config.wants(qkde::OutputKind::Series)) {
      const auto path = dir / series_name(r, sweep);
      qkde::emit_series(r, path);
      std::cerr << "wrote " << path.string() << "\n";
    }
  }
  const auto path = dir / (runs.front().config.name + (sweep ? ".sweep.json" : ".summary.json"));
  qkde::emit_summary(runs, path);
  std::cerr << "wrote " << path.string() << "\n";
}

// The guideline tau <= 1/(5|w|) is advisory; the rate is scanned on a grid.
void warn_step_guideline(const qkde::ScenarioConfig& cfg, double tau) {
  constexpr int kSamples = 1000;
  double peak = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = cfg.t0 + (cfg.tf - cfg.t0) * i / kSamples;
    peak = std::max(peak, qkde::norm(qkde::omega_at(cfg.profile, t)));
  }
  if (peak > 0.0 && tau > 1.0 / (5.0 * peak)) {
    std::cerr << "warning: tau = " << shortest(tau) << " exceeds the step guideline 1/(5|w|) = "
              << shortest(1.0 / (5.0 * peak)) << "\n";
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving integration of the quaternion kinematics equation"};
  app.require_subcommand(1);

  CommonArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  add_common(run_cmd, run_args);

  CommonArgs sweep_args;
  std::string taus_text = "0.1,0.05,0.025,0.0125,0.00625";
  std::string methods_text;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario over several step sizes");
  add_common(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--taus", taus_text, "Comma-separated step sizes")->capture_default_str();
  sweep_cmd->add_option("--methods", methods_text, "Comma-separated methods (default: config method)");

  double gap_x = 0.0;
  auto* gap_cmd = app.add_subcommand("gap", "Print the Cayley vs exact half-angle gap h(x)");
  gap_cmd->add_option("x", gap_x, "x = |omega| tau")->required();

  app.add_subcommand("registry", "List the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*run_cmd) {
      const auto cfg = load(run_args);
      warn_step_guideline(cfg, cfg.tau);
      std::vector<qkde::RunArtifacts> runs{qkde::run_scenario(cfg)};
      write_outputs(runs, cfg.out, false);
    } else if (*sweep_cmd) {
      const auto cfg = load(sweep_args);
      std::vector<double> taus;
      for (const auto& t : split_list(taus_text)) {
        double v = 0.0;
        const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) {
          throw qkde::ConfigError("invalid field 'taus': cannot parse '" + t + "'");
        }
        taus.push_back(v);
      }
      std::vector<qkde::Method> methods;
      for (const auto& m : split_list(methods_text)) {
        const auto parsed = qkde::method_from_string(m);
        if (!parsed) throw qkde::ConfigError("invalid field 'methods': unknown method '" + m + "'");
        methods.push_back(*parsed);
      }
      if (methods.empty()) methods.push_back(cfg.method);
      for (double tau : taus) warn_step_guideline(cfg, tau);
      write_outputs(qkde::run_sweep(cfg, methods, taus), cfg.out, true);
    } else if (*gap_cmd) {
      std::cout << qkde::format_double(qkde::euler_formula_gap(gap_x)) << "\n";
    } else {
      for (const auto& e : qkde::scenario_registry()) {
        std::cout << e.name << "\t" << e.description << "\n";
      }
    }
  } catch (const qkde::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const qkde::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
