#include <benchmark/benchmark.h>

#include "pulsent/drift.hpp"
#include "pulsent/io_relation.hpp"
#include "pulsent/optimizer.hpp"
#include "pulsent/propagator.hpp"
#include "pulsent/pulse_covariance.hpp"

using namespace pulsent;

namespace {

// Row-1 optimum in units of omega_m.
PhysicalParams unit_row1() {
  PhysicalParams p;
  p.omega_m = 1.0;
  p.kappa = 0.828;
  p.g = 0.303 * p.kappa;
  p.gamma = 1e-5;
  p.tau = 9.7;
  p.detuning = -1.0;
  p.n_bar = 1100.0;
  return p;
}

void BM_Objective(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(objective(9.7e-5, 0.828, 0.303, 1100.0, 0.0, 1e5));
}
BENCHMARK(BM_Objective);

void BM_ObjectiveNoThermal(benchmark::State& state) {
  ObjectiveOptions o;
  o.thermal = false;
  for (auto _ : state) benchmark::DoNotOptimize(objective(9.7e-5, 0.828, 0.303, 0.0, 0.0, 1e5, o));
}
BENCHMARK(BM_ObjectiveNoThermal);

void BM_PropagatorConstruct(benchmark::State& state) {
  const DriftModel d = build_drift(unit_row1(), true);
  for (auto _ : state) {
    Propagator m(d.A);
    benchmark::DoNotOptimize(m.evaluate(9.7));
  }
}
BENCHMARK(BM_PropagatorConstruct);

void BM_PropagatorCovariance(benchmark::State& state) {
  const DriftModel d = build_drift(unit_row1(), true);
  const Propagator m(d.A);
  const Mat4 s0 = GaussianState::thermal(3.0, 0.0).cov;
  for (auto _ : state) benchmark::DoNotOptimize(m.covariance(s0, d.N, 9.7));
}
BENCHMARK(BM_PropagatorCovariance);

void BM_PulseOutputState(benchmark::State& state) {
  const PhysicalParams p = unit_row1();
  const DriftModel d = build_drift(p, false);
  const OutputMode mode = default_output_mode(d, p.tau);
  for (auto _ : state) benchmark::DoNotOptimize(pulse_output_state(d, mode, 0.0));
}
BENCHMARK(BM_PulseOutputState);

void BM_IoRelation(benchmark::State& state) {
  const PhysicalParams p = unit_row1();
  const DriftModel d = build_drift(p, false);
  const OutputMode mode = default_output_mode(d, p.tau);
  const TimeGrid grid = TimeGrid::uniform(p.tau, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(io_relation(d, mode, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IoRelation)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_Optimize(benchmark::State& state) {
  OptimizerOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(optimize(1100.0, 0.0, 1e5, opt));
}
BENCHMARK(BM_Optimize)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
