#include "leoho/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "leoho/ephemeris.hpp"
#include "leoho/sync_table.hpp"

namespace leoho {

namespace {
constexpr int kWarmupUpdates = 60;
}  // namespace

PredictBenchResult predict_bench(std::size_t n_users, StrategyKind strategy,
                                 std::string_view preset, std::uint64_t seed, int repeats) {
  if (n_users == 0) throw std::invalid_argument("predict_bench needs at least one user");
  if (repeats < 1) throw std::invalid_argument("predict_bench needs at least one repeat");

  const auto cfg = constellation_preset(preset);
  const AnalyticEphemeris eph(build_walker_constellation(cfg));
  SyncContext ctx;
  ctx.prediction = {&eph, cfg.min_elevation_deg, {}, 0.0};

  // Uniform over the sphere, restricted to the band the shell covers.
  std::mt19937_64 rng(seed);
  const double band = std::sin(deg2rad(std::min(cfg.inclination_deg, 89.0)));
  std::uniform_real_distribution<double> z(-band, band);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);

  SyncTable table = make_sync_table(0.0);
  {
    const SatelliteSnapshot at_T(ctx.prediction, table.T);
    const SatelliteSnapshot at_h(ctx.prediction, table.T + table.delta_t);
    for (std::size_t i = 0; i < n_users; ++i) {
      UserInfo u;
      u.ue_id = static_cast<UeId>(i);
      u.position.lat_deg = rad2deg(std::asin(z(rng)));
      u.position.lon_deg = normalize_lon_deg(lon(rng));
      u.strategy = {strategy, true};
      apply_ue_event(table, u, UeEventKind::Register, ctx, at_T, at_h);
    }
  }

  // Fresh registrations all sit on their best satellite; run five minutes
  // of updates so remaining pass times reach steady state.
  for (int i = 0; i < kWarmupUpdates; ++i) table = periodic_update(table, table.T + table.delta_t, ctx);

  PredictBenchResult out;
  out.users = n_users;
  out.strategy = strategy;
  out.preset = std::string(preset);
  out.wall_ms = std::numeric_limits<double>::infinity();
  const double t = table.T + table.delta_t;
  for (int r = 0; r < repeats; ++r) {
    PredictionStats stats;
    const auto start = std::chrono::steady_clock::now();
    const SyncTable next = periodic_update(table, t, ctx, &stats);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.wall_ms = std::min(out.wall_ms, ms);
    out.candidates = stats.candidates;
    out.switching = static_cast<std::size_t>(std::count_if(
        next.rows.begin(), next.rows.end(), [](const auto& kv) { return kv.second.t_p != 0.0; }));
  }
  return out;
}

}  // namespace leoho
