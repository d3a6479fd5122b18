#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qkde/errors.hpp"
#include "qkde/scenario.hpp"
#include "support.hpp"

namespace qkde {
namespace {

constexpr double kPi = std::numbers::pi;

std::string config_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(ParseConfig, MinimalRegistryConfig) {
  const auto cfg = parse_config(R"({"profile": "fig1a", "tau": 0.01})");
  ASSERT_NE(cfg.profile.constant_value(), nullptr);
  EXPECT_EQ(*cfg.profile.constant_value(), (Vec3{{2, 10, 3}}));
  EXPECT_EQ(cfg.q0, Quaternion(1, 0, 0, 0));
  EXPECT_EQ(cfg.name, "fig1a");
  EXPECT_EQ(cfg.method, Method::SgaAutonomous);
  EXPECT_EQ(cfg.tau, 0.01);
  EXPECT_EQ(cfg.t0, 0.0);
  EXPECT_EQ(cfg.tf, 10.0);
  EXPECT_TRUE(std::holds_alternative<oracle_kind::ConstantAnalytic>(cfg.oracle));
}

TEST(ParseConfig, ConingAutoWiresOracle) {
  const auto cfg = parse_config(
      R"({"profile": {"type": "coning", "omega0": "2*pi", "beta": "pi/80"}, "tau": 0.01, "tf": 20})");
  const auto* o = std::get_if<oracle_kind::Coning>(&cfg.oracle);
  ASSERT_NE(o, nullptr);
  EXPECT_DOUBLE_EQ(o->omega0, 2 * kPi);
  EXPECT_DOUBLE_EQ(o->beta, kPi / 80);
  EXPECT_EQ(cfg.method, Method::SgaNonAutonomous);
  EXPECT_EQ(cfg.q0, coning_analytic_state(2 * kPi, kPi / 80, 0.0));
}

TEST(ParseConfig, RegistryConingDefaults) {
  const auto cfg = parse_config(R"({"profile": "coning"})");
  EXPECT_EQ(cfg.tf, 1000.0);
  EXPECT_TRUE(std::holds_alternative<oracle_kind::Coning>(cfg.oracle));
}

TEST(ParseConfig, FullDocument) {
  const auto cfg = parse_config(R"({
    "name": "custom", "profile": {"type": "constant", "omega": [0, 1, 0]},
    "q0": [0, 1, 0, 0], "t0": 1, "tf": 3, "tau": 0.1, "method": "GL2",
    "sampling": "interp", "oracle": "none",
    "outputs": ["series", "error-report", "defect-ladder", "benchmark"],
    "ladder_halvings": 3, "subnorm_check_start": 2, "out": "results"})");
  EXPECT_EQ(cfg.name, "custom");
  EXPECT_EQ(cfg.profile_key, "constant");
  EXPECT_EQ(cfg.q0, Quaternion(0, 1, 0, 0));
  EXPECT_EQ(cfg.method, Method::GaussLegendre2);
  EXPECT_EQ(cfg.sampling, MidpointSamplingMode::LinearInterp);
  EXPECT_TRUE(std::holds_alternative<oracle_kind::None>(cfg.oracle));
  EXPECT_EQ(cfg.outputs.size(), 4u);
  EXPECT_TRUE(cfg.wants(OutputKind::Benchmark));
  EXPECT_EQ(cfg.ladder_halvings, 3);
  EXPECT_EQ(cfg.subnorm_check_start, 2.0);
  EXPECT_EQ(cfg.out, "results");
}

TEST(ParseConfig, TabulatedProfile) {
  const auto cfg = parse_config(
      R"({"profile": {"type": "tabulated", "samples": [[0, 1, 0, 0], [5, 2, 0, 0]]}, "tf": 5, "tau": 0.5})");
  EXPECT_EQ(cfg.profile.kind(), "tabulated");
  EXPECT_TRUE(std::holds_alternative<oracle_kind::None>(cfg.oracle));
  EXPECT_NE(config_error(R"({"profile": {"type": "tabulated", "samples": [[0, 1, 0, 0], [5, 2, 0, 0]]}, "tf": 6})")
                .find("'tf'"),
            std::string::npos);
}

TEST(ParseConfig, ValidationErrorsNameTheField) {
  EXPECT_NE(config_error(R"({"profile": "fig2", "t0": 5, "tf": 5})").find("'tf'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "tau": 0})").find("'tau'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "q0": [1, 1, 0, 0]})").find("'q0'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "method": "SGA-A"})").find("'method'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "method": "RK5"})").find("'method'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "oracle": "constant-analytic"})").find("'oracle'"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig9"})").find("'profile'"), std::string::npos);
  EXPECT_NE(config_error(R"({"tau": 0.1})").find("'profile'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "sampling": "cubic"})").find("'sampling'"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": "fig2", "ladder_halvings": 0})").find("'ladder_halvings'"),
            std::string::npos);
  EXPECT_NE(config_error(R"({"profile": {"type": "coning", "omega0": 0}})").find("'profile'"), std::string::npos);
}

TEST(ParseConfig, UnknownKeysRejected) {
  EXPECT_NE(config_error(R"({"profile": "fig2", "taus": 0.1})").find("taus"), std::string::npos);
  EXPECT_NE(config_error(R"({"profile": {"type": "constant", "omega": [1, 0, 0], "w": 1}})").find("w"),
            std::string::npos);
}

TEST(ParseConfig, MalformedJsonReportsPosition) {
  const std::string msg = config_error("{\n  \"profile\": \"fig2\",\n  \"tau\": ,\n}");
  EXPECT_NE(msg.find("parse error at line 3"), std::string::npos) << msg;
  EXPECT_NE(config_error("[1, 2]").find("parse error"), std::string::npos);
}

TEST(ParseAngle, Forms) {
  EXPECT_DOUBLE_EQ(parse_angle_expression("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_angle_expression("pi/80"), kPi / 80);
  EXPECT_DOUBLE_EQ(parse_angle_expression("2*pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_angle_expression("-3*pi/4"), -3 * kPi / 4);
  EXPECT_THROW(parse_angle_expression("tau"), ConfigError);
  EXPECT_THROW(parse_angle_expression("pi/0"), ConfigError);
  EXPECT_THROW(parse_angle_expression("2pi"), ConfigError);
}

TEST(Registry, FrozenNamesResolveToProfiles) {
  std::vector<std::string> names;
  for (const auto& e : scenario_registry()) names.emplace_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"fig1a", "fig1b", "fig1c", "fig1d", "fig2", "coning"}));
  const double t = 0.77;
  EXPECT_EQ(omega_at(registry_profile("fig1b"), t), omega_at(AngularVelocityProfile::fig1b(), t));
  EXPECT_EQ(omega_at(registry_profile("fig1c"), t), omega_at(AngularVelocityProfile::fig1c(), t));
  EXPECT_EQ(omega_at(registry_profile("fig1d"), t), omega_at(AngularVelocityProfile::fig1d(), t));
  EXPECT_EQ(omega_at(registry_profile("fig2"), t), omega_at(AngularVelocityProfile::fig2(), t));
  EXPECT_EQ(omega_at(registry_profile("coning"), t),
            omega_at(AngularVelocityProfile::coning(2 * kPi, kPi / 80), t));
  EXPECT_EQ(omega_at(registry_profile("fig1a"), t), (Vec3{{2, 10, 3}}));
  EXPECT_THROW(registry_profile("fig3"), ConfigError);
}

TEST(Methods, RoundTripNames) {
  for (Method m : {Method::SgaAutonomous, Method::SgaNonAutonomous, Method::Rk4, Method::EulerBackward,
                   Method::GaussLegendre2}) {
    EXPECT_EQ(method_from_string(to_string(m)), m);
  }
  EXPECT_FALSE(method_from_string("sga").has_value());
}

TEST(Overrides, AppliedAndRevalidated) {
  auto cfg = parse_config(R"({"profile": "fig2"})");
  apply_overrides(cfg, {.tau = 0.25, .t0 = std::nullopt, .tf = 3.0, .method = Method::EulerBackward,
                        .sampling = MidpointSamplingMode::LinearInterp, .out = "x"});
  EXPECT_EQ(cfg.tau, 0.25);
  EXPECT_EQ(cfg.tf, 3.0);
  EXPECT_EQ(cfg.method, Method::EulerBackward);
  EXPECT_EQ(cfg.out, "x");
  EXPECT_THROW(apply_overrides(cfg, {.tau = -1.0}), ConfigError);
  EXPECT_THROW(apply_overrides(cfg, {.method = Method::SgaAutonomous}), ConfigError);
}

TEST(LoadConfig, MissingFile) { EXPECT_THROW(load_config("/nonexistent/qkde.json"), IoError); }

TEST(RunScenario, Fig1aNormHeld) {
  const auto run = run_scenario(parse_config(R"({"profile": "fig1a", "tau": 0.01})"));
  EXPECT_EQ(run.trajectory.size(), 1001u);
  EXPECT_EQ(run.timing.steps, 1000u);
  EXPECT_GE(run.timing.wall_clock_s, 0.0);
  for (const auto& q : run.trajectory.states) EXPECT_NEAR(q.norm(), 1.0, 1e-10);
  ASSERT_TRUE(run.errors.has_value());
  // Global error is the accumulated half-angle phase lag, about |w|^3 tau^2 T / 96.
  const double lag = std::pow(std::sqrt(113.0), 3) * 1e-4 * 10.0 / 96.0;
  EXPECT_LT(run.errors->max_error(), lag);
  EXPECT_GT(run.errors->max_error(), 0.9 * lag);
}

TEST(RunScenario, Fig2MethodsAtLargeStep) {
  auto cfg = parse_config(R"({"profile": "fig2", "tau": 0.25})");
  cfg.method = Method::EulerBackward;
  const auto eub = run_scenario(cfg);
  EXPECT_LT(eub.trajectory.final_state().norm(), 0.9);
  cfg.method = Method::SgaNonAutonomous;
  EXPECT_LE(max_norm_deviation(run_scenario(cfg).trajectory), 1e-10);
  cfg.method = Method::Rk4;
  EXPECT_GT(max_norm_deviation(run_scenario(cfg).trajectory), 1e-6);
}

TEST(RunScenario, DefectAndErrorLadders) {
  const auto run =
      run_scenario(parse_config(R"({"profile": "coning", "tau": 0.1, "tf": 10, "outputs": ["defect-ladder"]})"));
  ASSERT_TRUE(run.defect_ladder.has_value());
  ASSERT_TRUE(run.error_ladder.has_value());
  EXPECT_EQ(run.error_ladder->points.size(), 5u);
  ASSERT_TRUE(run.error_ladder->estimated_order.has_value());
  EXPECT_NEAR(*run.error_ladder->estimated_order, 2.0, 0.2);
  const std::string json = summary_json(std::span(&run, 1));
  EXPECT_NE(json.find("\"estimated_order\""), std::string::npos);
}

TEST(RunScenario, SubnormCheck) {
  const auto run = run_scenario(parse_config(R"({"profile": "fig1b", "tau": 0.01, "subnorm_check_start": 10})"));
  ASSERT_TRUE(run.subnorms.has_value());
  EXPECT_LE(run.subnorms->pair01, 1e-12);
  EXPECT_EQ(run.subnorms->pair23, 0.0);
}

TEST(RunScenario, BenchmarkRepeats) {
  const auto run = run_scenario(parse_config(R"({"profile": "fig1a", "tau": 0.01, "outputs": ["benchmark"]})"));
  EXPECT_TRUE(run.benchmarked);
  EXPECT_GE(run.timing.repeats, 3u);
  EXPECT_GT(run.timing.wall_clock_s, 0.0);
}

TEST(RunScenario, DeterministicOutputs) {
  const char* text = R"({"profile": "fig1c", "tau": 0.05, "outputs": ["series", "defect-ladder"]})";
  const auto a = run_scenario(parse_config(text));
  const auto b = run_scenario(parse_config(text));
  EXPECT_EQ(series_csv(a), series_csv(b));
  EXPECT_EQ(summary_json(std::span(&a, 1)), summary_json(std::span(&b, 1)));
}

TEST(RunSweep, ConingErrorDecreasesAndGlBeatsSga) {
  auto cfg = parse_config(R"({"profile": "coning", "tf": 50})");
  const double taus[] = {0.1, 0.05, 0.025, 0.0125};
  const Method methods[] = {Method::SgaNonAutonomous, Method::GaussLegendre2};
  const auto runs = run_sweep(cfg, methods, taus);
  ASSERT_EQ(runs.size(), 8u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(runs[i].config.method, Method::SgaNonAutonomous);
    EXPECT_EQ(runs[i].config.tau, taus[i]);
    if (i > 0) EXPECT_LT(runs[i].errors->max_error(), runs[i - 1].errors->max_error());
    EXPECT_LT(runs[4 + i].errors->max_error(), runs[i].errors->max_error());
  }
  const std::string json = summary_json(runs);
  EXPECT_NE(json.find("\"frontiers\""), std::string::npos);
}

TEST(RunSweep, SingleMethodOverload) {
  const auto cfg = parse_config(R"({"profile": "fig2", "tau": 0.1})");
  const double taus[] = {0.1, 0.05};
  const auto runs = run_sweep(cfg, taus);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[1].config.tau, 0.05);
  const double bad[] = {0.1, -0.05};
  EXPECT_THROW(run_sweep(cfg, bad), ConfigError);
  EXPECT_THROW(run_sweep(cfg, std::span<const double>()), ConfigError);
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t end = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      std::from_chars(line.data() + pos, line.data() + end, v);
      row.push_back(v);
      pos = end + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

TEST(SeriesCsv, RoundTripsBitExactly) {
  const auto run = run_scenario(parse_config(R"({"profile": "coning", "tau": 0.01, "tf": 2})"));
  const std::string csv = series_csv(run);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  std::string header;
  const auto rows = parse_csv(csv, header);
  EXPECT_EQ(header, "t,e0,e1,e2,e3,norm,err0,err1,err2,err3");
  ASSERT_EQ(rows.size(), run.trajectory.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    ASSERT_EQ(rows[k].size(), 10u);
    EXPECT_EQ(rows[k][0], run.trajectory.times[k]);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(rows[k][1 + i], run.trajectory.states[k][i]);
    EXPECT_EQ(rows[k][5], run.trajectory.states[k].norm());
    const Quaternion ref = coning_analytic_state(2 * kPi, kPi / 80, run.trajectory.times[k]);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(rows[k][6 + i], std::fabs(run.trajectory.states[k][i] - ref[i]));
  }
}

TEST(SeriesCsv, OneStateWithoutOracle) {
  RunArtifacts run;
  run.config = parse_config(R"({"profile": "fig2", "oracle": "none"})");
  run.trajectory.times = {0.0};
  run.trajectory.states = {Quaternion()};
  EXPECT_EQ(series_csv(run), "t,e0,e1,e2,e3,norm\n0,1,0,0,0,1\n");
}

TEST(FormatDouble, RoundTripsAndIsLocaleFree) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    const std::string s = format_double(v);
    EXPECT_EQ(s.find(','), std::string::npos);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(Emit, WritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "qkde_emit_test";
  std::filesystem::create_directories(dir);
  const auto run = run_scenario(parse_config(R"({"profile": "fig1a", "tau": 0.1, "tf": 1})"));
  emit_series(run, dir / "a.csv");
  emit_summary(std::span(&run, 1), dir / "a.json");
  std::ifstream in(dir / "a.csv", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), series_csv(run));
  EXPECT_THROW(emit_series(run, dir / "missing" / "x.csv"), IoError);
  std::filesystem::remove_all(dir);
}

TEST(SummaryJson, SingleRunFields) {
  const auto run = run_scenario(parse_config(R"({"profile": "fig1a", "tau": 0.1})"));
  const std::string json = summary_json(std::span(&run, 1));
  for (const char* key : {"\"runs\"", "\"method\": \"SGA-A\"", "\"tau\": 0.1", "\"steps\": 100",
                          "\"max_component_errors\"", "\"max_norm_deviation\"", "\"wall_clock_s\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(json.find("\"frontiers\""), std::string::npos);
}

}  // namespace
}  // namespace qkde
