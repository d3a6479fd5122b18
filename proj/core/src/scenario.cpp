#include "qkde/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>
#include "qkde/baseline.hpp"
#include "qkde/sga.hpp"

namespace qkde {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr RegistryEntry kRegistry[] = {
    {"fig1a", "constant omega = [2, 10, 3]", 10.0},
    {"fig1b", "omega = [2(1 + sin t e^{-t/4}), 0, 0]", 30.0},
    {"fig1c", "omega = [2(1 + sin t e^{-t/4}), (t^2 - 3) e^{-t/3}, (1 + t) e^{-t}]", 30.0},
    {"fig1d", "omega = [sin 10t - 2, 2t + 1.4, 4 - 0.2 cos 3t]", 10.0},
    {"fig2", "omega = [sin 10t - 2, 2 sin t + 1.4, 4 - 0.2 cos 3t]", 15.0},
    {"coning", "coning motion, omega0 = 2 pi, beta = pi/80", 1000.0},
};

constexpr double kConingOmega0 = 2.0 * std::numbers::pi;
constexpr double kConingBeta = std::numbers::pi / 80.0;

[[noreturn]] void fail(std::string_view field, const std::string& why) {
  throw ConfigError("invalid field '" + std::string(field) + "': " + why);
}

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double get_number(const json& v, std::string_view field) {
  if (!v.is_number()) fail(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

double get_angle(const json& v, std::string_view field) {
  if (v.is_string()) {
    try {
      return parse_angle_expression(v.get<std::string>());
    } catch (const ConfigError& e) {
      fail(field, e.what());
    }
  }
  return get_number(v, field);
}

Vec3 get_vec3(const json& v, std::string_view field) {
  if (!v.is_array() || v.size() != 3) fail(field, "expected an array of 3 numbers");
  return Vec3{{get_number(v[0], field), get_number(v[1], field), get_number(v[2], field)}};
}

std::pair<double, double> get_coning_params(const json& obj, std::string_view field) {
  reject_unknown_keys(obj, field, {"type", "omega0", "beta"});
  const double w0 = obj.contains("omega0") ? get_angle(obj["omega0"], std::string(field) + ".omega0")
                                           : kConingOmega0;
  const double beta =
      obj.contains("beta") ? get_angle(obj["beta"], std::string(field) + ".beta") : kConingBeta;
  return {w0, beta};
}

AngularVelocityProfile parse_profile(const json& v, std::string& key) {
  if (v.is_string()) {
    key = v.get<std::string>();
    try {
      return registry_profile(key);
    } catch (const ConfigError& e) {
      fail("profile", e.what());
    }
  }
  if (!v.is_object()) fail("profile", "expected a registry name or an object");
  if (!v.contains("type") || !v["type"].is_string()) fail("profile.type", "missing or not a string");
  key = v["type"].get<std::string>();

  try {
    if (key == "constant") {
      reject_unknown_keys(v, "profile", {"type", "omega"});
      if (!v.contains("omega")) fail("profile.omega", "required for constant profiles");
      return AngularVelocityProfile::constant(get_vec3(v["omega"], "profile.omega"));
    }
    if (key == "coning") {
      const auto [w0, beta] = get_coning_params(v, "profile");
      return AngularVelocityProfile::coning(w0, beta);
    }
    if (key == "tabulated") {
      reject_unknown_keys(v, "profile", {"type", "samples"});
      const json& s = v.contains("samples") ? v["samples"] : json();
      if (!s.is_array()) fail("profile.samples", "expected an array of [t, w1, w2, w3]");
      std::vector<std::pair<double, Vec3>> samples;
      for (const auto& row : s) {
        if (!row.is_array() || row.size() != 4) fail("profile.samples", "rows must be [t, w1, w2, w3]");
        samples.emplace_back(get_number(row[0], "profile.samples"),
                             Vec3{{get_number(row[1], "profile.samples"),
                                   get_number(row[2], "profile.samples"),
                                   get_number(row[3], "profile.samples")}});
      }
      return AngularVelocityProfile::tabulated(std::move(samples));
    }
    reject_unknown_keys(v, "profile", {"type"});
    return registry_profile(key);
  } catch (const PreconditionError& e) {
    fail("profile", e.what());
  } catch (const ConfigError& e) {
    if (std::string_view(e.what()).starts_with("invalid field") ||
        std::string_view(e.what()).starts_with("unknown key")) {
      throw;
    }
    fail("profile.type", e.what());
  }
}

OracleKind parse_oracle(const json& v, const AngularVelocityProfile& profile) {
  std::string type;
  if (v.is_string()) {
    type = v.get<std::string>();
  } else if (v.is_object()) {
    if (!v.contains("type") || !v["type"].is_string()) fail("oracle.type", "missing or not a string");
    type = v["type"].get<std::string>();
  } else {
    fail("oracle", "expected a string or an object");
  }

  if (type == "none") return oracle_kind::None{};
  if (type == "constant-analytic") return oracle_kind::ConstantAnalytic{};
  if (type == "coning") {
    if (v.is_object()) {
      const auto [w0, beta] = get_coning_params(v, "oracle");
      return oracle_kind::Coning{w0, beta};
    }
    if (const auto* c = std::get_if<profile::Coning>(&profile.variant())) {
      return oracle_kind::Coning{c->omega0, c->beta};
    }
    return oracle_kind::Coning{kConingOmega0, kConingBeta};
  }
  fail("oracle", "unknown oracle '" + type + "'");
}

OutputKind parse_output(const json& v) {
  if (!v.is_string()) fail("outputs", "entries must be strings");
  const auto s = v.get<std::string>();
  if (s == "series") return OutputKind::Series;
  if (s == "error-report") return OutputKind::ErrorReport;
  if (s == "defect-ladder") return OutputKind::DefectLadder;
  if (s == "benchmark") return OutputKind::Benchmark;
  fail("outputs", "unknown output '" + s + "'");
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::string_view sampling_name(MidpointSamplingMode m) {
  return m == MidpointSamplingMode::Exact ? "exact" : "interp";
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Mat4 first_step_map(const ScenarioConfig& cfg, double h) {
  switch (cfg.method) {
    case Method::SgaAutonomous:
      return autonomous_transition(*cfg.profile.constant_value(), h).g;
    case Method::SgaNonAutonomous:
      return nonautonomous_transition(midpoint_omega(cfg.profile, cfg.t0, h, cfg.sampling), h).g;
    case Method::Rk4:
    case Method::EulerBackward:
    case Method::GaussLegendre2: {
      const auto bm = cfg.method == Method::Rk4             ? BaselineMethod::Rk4
                      : cfg.method == Method::EulerBackward ? BaselineMethod::EulerBackward
                                                            : BaselineMethod::GaussLegendre2;
      return one_step_matrix(
          [&](const Quaternion& q) { return baseline_step(bm, cfg.profile, q, cfg.t0, h); });
    }
  }
  throw ConfigError("unknown method");
}

ordered_json ladder_json(const DefectSeries& s) {
  ordered_json j;
  ordered_json taus = ordered_json::array();
  ordered_json values = ordered_json::array();
  for (const auto& p : s.points) {
    taus.push_back(p.tau);
    values.push_back(p.value);
  }
  j["taus"] = taus;
  j["values"] = values;
  j["estimated_order"] = s.estimated_order ? ordered_json(*s.estimated_order) : ordered_json();
  return j;
}

}  // namespace

// ---- names ----------------------------------------------------------------

std::string_view to_string(Method m) {
  switch (m) {
    case Method::SgaAutonomous:
      return "SGA-A";
    case Method::SgaNonAutonomous:
      return "SGA-NA";
    case Method::Rk4:
      return "RK4";
    case Method::EulerBackward:
      return "EUB";
    case Method::GaussLegendre2:
      return "GL2";
  }
  return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
  for (Method m : {Method::SgaAutonomous, Method::SgaNonAutonomous, Method::Rk4,
                   Method::EulerBackward, Method::GaussLegendre2}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

std::span<const RegistryEntry> scenario_registry() { return kRegistry; }

AngularVelocityProfile registry_profile(std::string_view name) {
  if (name == "fig1a") return AngularVelocityProfile::constant(Vec3{{2.0, 10.0, 3.0}});
  if (name == "fig1b") return AngularVelocityProfile::fig1b();
  if (name == "fig1c") return AngularVelocityProfile::fig1c();
  if (name == "fig1d") return AngularVelocityProfile::fig1d();
  if (name == "fig2") return AngularVelocityProfile::fig2();
  if (name == "coning") return AngularVelocityProfile::coning(kConingOmega0, kConingBeta);
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

double parse_angle_expression(std::string_view text) {
  const std::string_view original = text;
  auto bad = [&]() -> ConfigError {
    return ConfigError("cannot parse angle '" + std::string(original) + "'");
  };
  double sign = 1.0;
  if (!text.empty() && text.front() == '-') {
    sign = -1.0;
    text.remove_prefix(1);
  }
  double coef = 1.0;
  if (const auto star = text.find('*'); star != std::string_view::npos) {
    const auto num = text.substr(0, star);
    const auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), coef);
    if (ec != std::errc() || p != num.data() + num.size()) throw bad();
    text.remove_prefix(star + 1);
  }
  if (!text.starts_with("pi")) throw bad();
  text.remove_prefix(2);
  double denom = 1.0;
  if (!text.empty()) {
    if (text.front() != '/') throw bad();
    text.remove_prefix(1);
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), denom);
    if (ec != std::errc() || p != text.data() + text.size() || denom == 0.0) throw bad();
  }
  return sign * coef * std::numbers::pi / denom;
}

// ---- config ---------------------------------------------------------------

bool ScenarioConfig::wants(OutputKind k) const {
  return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

void ScenarioConfig::validate() const {
  if (name.empty()) fail("name", "must not be empty");
  if (!std::isfinite(t0)) fail("t0", "must be finite");
  if (!std::isfinite(tf) || !(tf > t0)) fail("tf", "must be finite and greater than t0");
  if (!std::isfinite(tau) || !(tau > 0.0)) fail("tau", "must be positive");
  if (!q0.is_unit()) fail("q0", "must have unit norm (|q0| = " + format_double(q0.norm()) + ")");
  if (method == Method::SgaAutonomous && profile.constant_value() == nullptr) {
    fail("method", "SGA-A requires a constant profile");
  }
  if (std::holds_alternative<oracle_kind::ConstantAnalytic>(oracle) &&
      profile.constant_value() == nullptr) {
    fail("oracle", "constant-analytic requires a constant profile");
  }
  if (const auto* tab = std::get_if<profile::Tabulated>(&profile.variant())) {
    if (t0 < tab->times.front() || tf > tab->times.back()) {
      fail("tf", "horizon extends beyond the tabulated samples");
    }
  }
  if (ladder_halvings < 1 || ladder_halvings > 12) fail("ladder_halvings", "must be in [1, 12]");
  if (subnorm_check_start && (*subnorm_check_start < t0 || *subnorm_check_start > tf)) {
    fail("subnorm_check_start", "must lie within [t0, tf]");
  }
}

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error at " + line_column(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("parse error at line 1, column 1: expected a JSON object");
  reject_unknown_keys(doc, "config",
                      {"name", "profile", "q0", "t0", "tf", "tau", "method", "sampling", "oracle",
                       "outputs", "ladder_halvings", "subnorm_check_start", "out"});

  ScenarioConfig cfg;
  if (!doc.contains("profile")) fail("profile", "required");
  cfg.profile = parse_profile(doc["profile"], cfg.profile_key);
  const auto* coning = std::get_if<profile::Coning>(&cfg.profile.variant());

  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail("name", "expected a string");
    cfg.name = doc["name"].get<std::string>();
  } else {
    cfg.name = cfg.profile_key;
  }

  if (doc.contains("t0")) cfg.t0 = get_number(doc["t0"], "t0");
  double span = 10.0;
  for (const auto& e : kRegistry) {
    if (e.name == cfg.profile_key && doc["profile"].is_string()) span = e.default_span;
  }
  cfg.tf = doc.contains("tf") ? get_number(doc["tf"], "tf") : cfg.t0 + span;
  if (doc.contains("tau")) cfg.tau = get_number(doc["tau"], "tau");

  if (doc.contains("q0")) {
    const json& q = doc["q0"];
    if (!q.is_array() || q.size() != 4) fail("q0", "expected an array of 4 numbers");
    cfg.q0 = Quaternion(get_number(q[0], "q0"), get_number(q[1], "q0"), get_number(q[2], "q0"),
                        get_number(q[3], "q0"));
  } else if (coning != nullptr) {
    cfg.q0 = coning_analytic_state(coning->omega0, coning->beta, cfg.t0);
  }

  if (doc.contains("method")) {
    if (!doc["method"].is_string()) fail("method", "expected a string");
    const auto m = method_from_string(doc["method"].get<std::string>());
    if (!m) fail("method", "expected one of SGA-A, SGA-NA, RK4, EUB, GL2");
    cfg.method = *m;
  } else {
    cfg.method = cfg.profile.constant_value() ? Method::SgaAutonomous : Method::SgaNonAutonomous;
  }

  if (doc.contains("sampling")) {
    const json& s = doc["sampling"];
    if (s == "exact") {
      cfg.sampling = MidpointSamplingMode::Exact;
    } else if (s == "interp") {
      cfg.sampling = MidpointSamplingMode::LinearInterp;
    } else {
      fail("sampling", "expected \"exact\" or \"interp\"");
    }
  }

  if (doc.contains("oracle")) {
    cfg.oracle = parse_oracle(doc["oracle"], cfg.profile);
  } else if (coning != nullptr) {
    cfg.oracle = oracle_kind::Coning{coning->omega0, coning->beta};
  } else if (cfg.profile.constant_value() != nullptr) {
    cfg.oracle = oracle_kind::ConstantAnalytic{};
  }

  if (doc.contains("outputs")) {
    if (!doc["outputs"].is_array()) fail("outputs", "expected an array");
    for (const auto& o : doc["outputs"]) cfg.outputs.push_back(parse_output(o));
  }
  if (doc.contains("ladder_halvings")) {
    const json& h = doc["ladder_halvings"];
    if (!h.is_number_integer()) fail("ladder_halvings", "expected an integer");
    cfg.ladder_halvings = h.get<int>();
  }
  if (doc.contains("subnorm_check_start")) {
    cfg.subnorm_check_start = get_number(doc["subnorm_check_start"], "subnorm_check_start");
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) fail("out", "expected a string");
    cfg.out = doc["out"].get<std::string>();
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_overrides(ScenarioConfig& cfg, const ConfigOverrides& o) {
  if (o.t0) cfg.t0 = *o.t0;
  if (o.tf) cfg.tf = *o.tf;
  if (o.tau) cfg.tau = *o.tau;
  if (o.method) cfg.method = *o.method;
  if (o.sampling) cfg.sampling = *o.sampling;
  if (o.out) cfg.out = *o.out;
  cfg.validate();
}

// ---- running --------------------------------------------------------------

std::optional<Oracle> make_oracle(const ScenarioConfig& cfg) {
  if (std::holds_alternative<oracle_kind::ConstantAnalytic>(cfg.oracle)) {
    const Vec3 w = *cfg.profile.constant_value();
    const Quaternion q0 = cfg.q0;
    const double t0 = cfg.t0;
    return Oracle([w, q0, t0](double t) { return analytic_constant_transition(w, t - t0) * q0; });
  }
  if (const auto* c = std::get_if<oracle_kind::Coning>(&cfg.oracle)) {
    const auto p = *c;
    return Oracle([p](double t) { return coning_analytic_state(p.omega0, p.beta, t); });
  }
  return std::nullopt;
}

Trajectory integrate(const ScenarioConfig& cfg) {
  switch (cfg.method) {
    case Method::SgaAutonomous: {
      const Vec3* w = cfg.profile.constant_value();
      if (w == nullptr) throw ConfigError("invalid field 'method': SGA-A requires a constant profile");
      return integrate_autonomous(*w, cfg.q0, cfg.t0, cfg.tf, cfg.tau);
    }
    case Method::SgaNonAutonomous:
      return integrate_nonautonomous(cfg.profile, cfg.q0, cfg.t0, cfg.tf, cfg.tau, cfg.sampling);
    case Method::Rk4:
      return integrate_baseline(BaselineMethod::Rk4, cfg.profile, cfg.q0, cfg.t0, cfg.tf, cfg.tau);
    case Method::EulerBackward:
      return integrate_baseline(BaselineMethod::EulerBackward, cfg.profile, cfg.q0, cfg.t0, cfg.tf,
                                cfg.tau);
    case Method::GaussLegendre2:
      return integrate_baseline(BaselineMethod::GaussLegendre2, cfg.profile, cfg.q0, cfg.t0, cfg.tf,
                                cfg.tau);
  }
  throw ConfigError("unknown method");
}

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RunArtifacts run;
  run.config = cfg;

  auto start = std::chrono::steady_clock::now();
  run.trajectory = integrate(cfg);
  double best = seconds_since(start);
  std::size_t repeats = 1;
  if (cfg.wants(OutputKind::Benchmark)) {
    run.benchmarked = true;
    double total = best;
    while (repeats < 3 || total < 0.2) {
      start = std::chrono::steady_clock::now();
      const Trajectory again = integrate(cfg);
      const double dt = seconds_since(start);
      best = std::min(best, dt);
      total += dt;
      ++repeats;
    }
  }
  run.timing = {best, run.trajectory.size() - 1, repeats};

  const auto oracle = make_oracle(cfg);
  if (oracle) run.errors = component_errors(run.trajectory, *oracle);

  if (cfg.wants(OutputKind::DefectLadder)) {
    run.defect_ladder = make_ladder(
        [&](double h) { return symplecticity_defect(first_step_map(cfg, h)); }, cfg.tau,
        cfg.ladder_halvings);
    if (oracle) {
      run.error_ladder = make_ladder(
          [&](double h) {
            ScenarioConfig c = cfg;
            c.tau = h;
            return component_errors(integrate(c), *oracle).max_error();
          },
          cfg.tau, cfg.ladder_halvings);
    }
  }

  if (cfg.subnorm_check_start) run.subnorms = subnorm_drift(run.trajectory, *cfg.subnorm_check_start);
  return run;
}

std::vector<RunArtifacts> run_sweep(const ScenarioConfig& base, std::span<const Method> methods,
                                    std::span<const double> taus) {
  if (taus.empty()) throw ConfigError("invalid field 'taus': must not be empty");
  if (methods.empty()) throw ConfigError("invalid field 'methods': must not be empty");
  std::vector<ScenarioConfig> configs;
  for (Method m : methods) {
    for (double tau : taus) {
      if (!(tau > 0.0) || !std::isfinite(tau)) fail("taus", "entries must be positive");
      ScenarioConfig c = base;
      c.method = m;
      c.tau = tau;
      c.validate();
      configs.push_back(std::move(c));
    }
  }

  std::vector<RunArtifacts> out;
  out.reserve(configs.size());
  if (base.wants(OutputKind::Benchmark)) {
    // Timings are taken one run at a time.
    for (const auto& c : configs) out.push_back(run_scenario(c));
    return out;
  }
  std::vector<std::future<RunArtifacts>> jobs;
  jobs.reserve(configs.size());
  for (const auto& c : configs) {
    jobs.push_back(std::async(std::launch::async, [&c] { return run_scenario(c); }));
  }
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<RunArtifacts> run_sweep(const ScenarioConfig& base, std::span<const double> taus) {
  const Method m[] = {base.method};
  return run_sweep(base, m, taus);
}

// ---- output ---------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string series_csv(const RunArtifacts& run) {
  const auto oracle = make_oracle(run.config);
  std::string out = "t,e0,e1,e2,e3,norm";
  if (oracle) out += ",err0,err1,err2,err3";
  out += '\n';
  const Trajectory& tr = run.trajectory;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const Quaternion& q = tr.states[k];
    out += format_double(tr.times[k]);
    for (std::size_t i = 0; i < 4; ++i) {
      out += ',';
      out += format_double(q[i]);
    }
    out += ',';
    out += format_double(q.norm());
    if (oracle) {
      const Quaternion ref = (*oracle)(tr.times[k]);
      for (std::size_t i = 0; i < 4; ++i) {
        out += ',';
        out += format_double(std::fabs(q[i] - ref[i]));
      }
    }
    out += '\n';
  }
  return out;
}

void emit_series(const RunArtifacts& run, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << series_csv(run);
  if (!f) throw IoError("write failed for " + path.string());
}

std::string summary_json(std::span<const RunArtifacts> runs) {
  ordered_json doc;
  ordered_json list = ordered_json::array();
  for (const auto& r : runs) {
    const auto& c = r.config;
    ordered_json j;
    j["name"] = c.name;
    j["profile"] = c.profile_key;
    j["method"] = std::string(to_string(c.method));
    j["sampling"] = std::string(sampling_name(c.sampling));
    j["tau"] = c.tau;
    j["t0"] = c.t0;
    j["tf"] = c.tf;
    j["steps"] = r.timing.steps;
    if (r.errors) {
      j["max_component_errors"] = r.errors->max_component_error;
      j["time_of_max_error"] = r.errors->time_of_max_error;
    } else {
      j["max_component_errors"] = nullptr;
      j["time_of_max_error"] = nullptr;
    }
    j["max_norm_deviation"] = max_norm_deviation(r.trajectory);
    if (r.benchmarked) {
      j["wall_clock_s"] = r.timing.wall_clock_s;
      j["repeats"] = r.timing.repeats;
    } else {
      j["wall_clock_s"] = nullptr;
    }
    if (r.error_ladder) {
      j["estimated_order"] = r.error_ladder->estimated_order ? ordered_json(*r.error_ladder->estimated_order)
                                                             : ordered_json();
      j["error_ladder"] = ladder_json(*r.error_ladder);
    }
    if (r.defect_ladder) j["defect_ladder"] = ladder_json(*r.defect_ladder);
    if (r.subnorms) {
      j["subnorm_drift"] = {{"e0e1", r.subnorms->pair01}, {"e2e3", r.subnorms->pair23}};
    }
    list.push_back(std::move(j));
  }
  doc["runs"] = std::move(list);

  // Per-method frontier when the same scenario was run at several taus.
  ordered_json frontiers = ordered_json::array();
  std::vector<Method> seen;
  for (const auto& r : runs) {
    if (std::find(seen.begin(), seen.end(), r.config.method) != seen.end()) continue;
    seen.push_back(r.config.method);
    std::vector<LadderPoint> pts;
    bool have_errors = true;
    for (const auto& s : runs) {
      if (s.config.method != r.config.method) continue;
      have_errors = have_errors && s.errors.has_value();
      pts.push_back({s.config.tau, s.errors ? s.errors->max_error() : 0.0});
    }
    if (pts.size() < 2) continue;
    ordered_json f;
    f["method"] = std::string(to_string(r.config.method));
    ordered_json taus = ordered_json::array();
    ordered_json errs = ordered_json::array();
    for (const auto& p : pts) {
      taus.push_back(p.tau);
      errs.push_back(have_errors ? ordered_json(p.value) : ordered_json());
    }
    f["taus"] = taus;
    f["max_errors"] = errs;
    f["estimated_order"] = nullptr;
    if (have_errors) {
      try {
        f["estimated_order"] = convergence_order(pts);
      } catch (const Error&) {
        // taus not a halving ladder, or an exact zero error
      }
    }
    frontiers.push_back(std::move(f));
  }
  if (!frontiers.empty()) doc["frontiers"] = std::move(frontiers);
  return doc.dump(2) + "\n";
}

void emit_summary(std::span<const RunArtifacts> runs, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << summary_json(runs);
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace qkde
