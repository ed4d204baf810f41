#include <benchmark/benchmark.h>

#include "dpsrk/montecarlo.hpp"
#include "dpsrk/presets.hpp"
#include "dpsrk/rate.hpp"
#include "dpsrk/sweep.hpp"

namespace {

using namespace dpsrk;

const ScenarioFile& fig3_si() {
  static const ScenarioFile s = PresetRegistry::builtin().scenario("fig3", DetectorChoice::si, 100);
  return s;
}

void BM_SecureRate(benchmark::State& state) {
  const LinkScenario link = fig3_si().link(100.0);
  const AttackModel a = fig3_si().attack_model();
  for (auto _ : state) benchmark::DoNotOptimize(secure_rate(link, a));
}
BENCHMARK(BM_SecureRate);

void BM_DistanceSweep(benchmark::State& state) {
  const SweepRequest req{SweepAxis::distance, 0, 300, static_cast<int>(state.range(0)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(sweep(fig3_si(), req));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DistanceSweep)->Arg(301)->Arg(3001);

void BM_MaxSecureDistance(benchmark::State& state) {
  const LinkScenario link = fig3_si().link(0.0);
  const AttackModel a = fig3_si().attack_model();
  for (auto _ : state) benchmark::DoNotOptimize(max_secure_distance(link, a, 0.0));
}
BENCHMARK(BM_MaxSecureDistance);

void BM_OptimizeMu(benchmark::State& state) {
  const LinkScenario link = fig3_si().link(100.0);
  const AttackModel a = fig3_si().attack_model();
  for (auto _ : state) benchmark::DoNotOptimize(optimize_mu(link, a, 0.01, 1.0));
}
BENCHMARK(BM_OptimizeMu);

void BM_SimulateLink(benchmark::State& state) {
  McConfig cfg;
  cfg.n_pulses = static_cast<std::uint64_t>(state.range(0));
  cfg.scenario = fig3_si().link(100.0);
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(simulate_link(cfg, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateLink)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
