#include <benchmark/benchmark.h>

#include <random>

#include "leoho/ephemeris.hpp"
#include "leoho/prediction.hpp"
#include "leoho/topology.hpp"

namespace {

using namespace leoho;

const AnalyticEphemeris& starlink() {
  static const AnalyticEphemeris eph(build_walker_constellation(constellation_preset("starlink")));
  return eph;
}

std::vector<UEState> users(std::size_t n, StrategyKind kind) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-50.0, 50.0), lon(-180.0, 180.0);
  std::vector<UEState> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].ue_id = static_cast<UeId>(i);
    out[i].position = {lat(rng), lon(rng), 0.0};
    out[i].strategy = {kind, true};
  }
  return out;
}

void BM_PredictAccessMap(benchmark::State& state) {
  const auto kind = state.range(1) ? StrategyKind::Consistent : StrategyKind::Flexible;
  const PredictionContext ctx{&starlink(), 40.0, {}, 0.0};
  const auto ues = users(static_cast<std::size_t>(state.range(0)), kind);
  const SatelliteSnapshot now(ctx, 0.0);
  AccessMap current;
  for (const auto& u : ues) current.access[u.ue_id] = now.resolve(u.position, u.strategy, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_access_map(current, ues, 5.0, ctx));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PredictAccessMap)
    ->ArgsProduct({{100, 1000, 10000}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_SnapshotBuild(benchmark::State& state) {
  const PredictionContext ctx{&starlink(), 40.0, {}, 0.0};
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SatelliteSnapshot(ctx, t));
    t += 5.0;
  }
}
BENCHMARK(BM_SnapshotBuild)->Unit(benchmark::kMicrosecond);

void BM_MinDelayPath(benchmark::State& state) {
  const auto& eph = starlink();
  const auto states = eph.states_at(0.0);
  const std::vector<GroundStation> gs{{"core", {51.5, -0.1, 0.0}, true}};
  const auto graph = build_isl_grid(eph.layout(), states, gs, {}, 0.0);
  std::mt19937 rng(3);
  std::uniform_int_distribution<SatId> pick(0, static_cast<SatId>(eph.size() - 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_delay_path(graph, pick(rng), pick(rng)));
  }
}
BENCHMARK(BM_MinDelayPath)->Unit(benchmark::kMicrosecond);

void BM_BuildIslGrid(benchmark::State& state) {
  const auto& eph = starlink();
  const auto states = eph.states_at(0.0);
  const std::vector<GroundStation> gs{{"core", {51.5, -0.1, 0.0}, true}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_isl_grid(eph.layout(), states, gs, {}, 0.0));
  }
}
BENCHMARK(BM_BuildIslGrid)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
