#include <benchmark/benchmark.h>

#include "mmshare/simengine.hpp"

using namespace mmshare;

namespace {

SimConfig bench_config(InterferenceMode mode) {
  SimConfig cfg;
  cfg.slots_per_drop = 500;
  cfg.num_drops = 1;
  cfg.threads = 1;
  cfg.interference_mode = mode;
  return cfg;
}

}  // namespace

static void DropNoiseLimited(benchmark::State& state) {
  const SimConfig cfg = bench_config(InterferenceMode::NoiseLimited);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_drop(cfg, {SharingRegime::EqualSharing, 0.5}, seed++));
  }
  state.SetItemsProcessed(state.iterations() * cfg.slots_per_drop);
}
BENCHMARK(DropNoiseLimited)->Unit(benchmark::kMillisecond);

static void DropFullInterference(benchmark::State& state) {
  const SimConfig cfg = bench_config(InterferenceMode::Full);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_drop(cfg, {SharingRegime::EqualSharing, 0.5}, seed++));
  }
  state.SetItemsProcessed(state.iterations() * cfg.slots_per_drop);
}
BENCHMARK(DropFullInterference)->Unit(benchmark::kMillisecond);

static void DropWeighted(benchmark::State& state) {
  const SimConfig cfg = bench_config(InterferenceMode::NoiseLimited);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_drop(cfg, {SharingRegime::WeightedSharing, 0.8}, seed++));
  }
  state.SetItemsProcessed(state.iterations() * cfg.slots_per_drop);
}
BENCHMARK(DropWeighted)->Unit(benchmark::kMillisecond);
