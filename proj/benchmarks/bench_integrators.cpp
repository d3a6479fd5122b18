#include <benchmark/benchmark.h>

#include <numbers>

#include "qkde/baseline.hpp"
#include "qkde/sga.hpp"

namespace {

using namespace qkde;

constexpr double kOmega0 = 2.0 * std::numbers::pi;
constexpr double kBeta = std::numbers::pi / 80.0;

const AngularVelocityProfile& coning() {
  static const AngularVelocityProfile p = AngularVelocityProfile::coning(kOmega0, kBeta);
  return p;
}

// Single steps.

void BM_AutonomousTransition(benchmark::State& state) {
  const Vec3 w{{2.0, 10.0, 3.0}};
  for (auto _ : state) benchmark::DoNotOptimize(autonomous_transition(w, 0.01));
}
BENCHMARK(BM_AutonomousTransition);

void BM_NonAutonomousStep(benchmark::State& state) {
  Quaternion q = coning_analytic_state(kOmega0, kBeta, 0.0);
  double t = 0.0;
  for (auto _ : state) {
    q = nonautonomous_transition(midpoint_omega(coning(), t, 0.01, MidpointSamplingMode::Exact), 0.01).g * q;
    t += 0.01;
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_NonAutonomousStep);

void BM_BaselineStep(benchmark::State& state) {
  const auto method = static_cast<BaselineMethod>(state.range(0));
  state.SetLabel(std::string(to_string(method)));
  Quaternion q = coning_analytic_state(kOmega0, kBeta, 0.0);
  double t = 0.0;
  for (auto _ : state) {
    q = baseline_step(method, coning(), q, t, 0.01);
    t += 0.01;
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_BaselineStep)
    ->Arg(static_cast<int>(BaselineMethod::Rk4))
    ->Arg(static_cast<int>(BaselineMethod::EulerBackward))
    ->Arg(static_cast<int>(BaselineMethod::GaussLegendre2));

// Whole coning runs over 100 s at the step sizes of the accuracy/cost sweep.

void BM_ConingSga(benchmark::State& state) {
  const double tau = 0.1 / static_cast<double>(state.range(0));
  const Quaternion q0 = coning_analytic_state(kOmega0, kBeta, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_nonautonomous(coning(), q0, 0.0, 100.0, tau));
}
BENCHMARK(BM_ConingSga)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ConingGl2(benchmark::State& state) {
  const double tau = 0.1 / static_cast<double>(state.range(0));
  const Quaternion q0 = coning_analytic_state(kOmega0, kBeta, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_baseline(BaselineMethod::GaussLegendre2, coning(), q0, 0.0, 100.0, tau));
  }
}
BENCHMARK(BM_ConingGl2)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ConstantRateSga(benchmark::State& state) {
  const Vec3 w{{2.0, 10.0, 3.0}};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_autonomous(w, Quaternion(), 0.0, 100.0, 0.01));
}
BENCHMARK(BM_ConstantRateSga)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
