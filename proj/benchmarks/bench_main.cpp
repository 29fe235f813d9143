#include <benchmark/benchmark.h>

#include "afcproc/catalog.hpp"
#include "afcproc/chain.hpp"
#include "afcproc/detection.hpp"
#include "afcproc/pulse.hpp"
#include "afcproc/scenario.hpp"

namespace {

using namespace afcproc;

const TimeGrid kGrid{-100.0, 0.05, 8000};

void BM_transform_round_trip(benchmark::State& state) {
  ComplexField x = gaussian_pulse({0.0, 12.0, 200.0, 1.0}, kGrid);
  for (auto _ : state) {
    ComplexField back = to_time(to_spectrum(x));
    benchmark::DoNotOptimize(back.samples.data());
  }
}
BENCHMARK(BM_transform_round_trip);

void BM_transfer_compile(benchmark::State& state) {
  ProcessorProgram program = six_segment_processor();
  for (auto _ : state) {
    TransferFunction tf = transfer_function(program, kGrid);
    benchmark::DoNotOptimize(tf.echo.data());
  }
}
BENCHMARK(BM_transfer_compile);

void BM_full_chain(benchmark::State& state) {
  const GaussianPulseSpec pulses[] = {
      {0.0, 12.0, 0.0, 1.0}, {25.0, 12.0, 0.0, 0.75}, {50.0, 12.0, 0.0, 0.5}};
  ComplexField x = pulse_train(pulses, kGrid);
  ChainSpec chain;
  GatedShiftProgram gates;
  gates.shifts = {{{-12.5, 12.5}, 600.0, 1.0},
                  {{12.5, 37.5}, 200.0, 1.0},
                  {{37.5, 62.5}, -400.0, 1.0}};
  chain.input_actions = {ModulatorAction{gates, StageTarget::both}};
  chain.program = six_segment_processor();
  for (auto _ : state) {
    ChainResult r = run_chain(x, chain);
    benchmark::DoNotOptimize(r.echo.samples.data());
  }
}
BENCHMARK(BM_full_chain);

void BM_serrodyne_imperfect(benchmark::State& state) {
  ComplexField x = gaussian_pulse({0.0, 12.0, 0.0, 1.0}, kGrid);
  SerrodyneSpec spec;
  spec.shift_mhz = 1000.0;
  spec.dac_rate_per_ns = 20.0;
  serrodyne_flyback_time_constant();  // exclude the one-time calibration
  for (auto _ : state) {
    ComplexField y = serrodyne(x, spec);
    benchmark::DoNotOptimize(y.samples.data());
  }
}
BENCHMARK(BM_serrodyne_imperfect);

void BM_detection_histogram(benchmark::State& state) {
  ComplexField echo =
      set_mean_photons(gaussian_pulse({100.0, 12.0, 0.0, 1.0}, {0.0, 0.05, 7400}), 0.02);
  DetectionSpec spec;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    spec.rng_seed = seed++;
    Histogram h = simulate_counts(echo, spec);
    benchmark::DoNotOptimize(h.counts.data());
  }
}
BENCHMARK(BM_detection_histogram);

void BM_scenario_fig9(benchmark::State& state) {
  ScenarioConfig config = catalog_scenario("fig9");
  config.detection.duration_s = 0.01;
  for (auto _ : state) {
    ScenarioRun run = run_scenario(config);
    benchmark::DoNotOptimize(run.summary_json.data());
  }
}
BENCHMARK(BM_scenario_fig9);

}  // namespace

BENCHMARK_MAIN();
