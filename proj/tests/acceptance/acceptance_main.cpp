// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "leoho/bench.hpp"
#include "leoho/io.hpp"
#include "leoho/prediction.hpp"
#include "leoho/scenario.hpp"
#include "leoho/sync_table.hpp"
#include "support/oracle.hpp"

using namespace leoho;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const fs::path kSource = LEOHO_SOURCE_DIR;

// The shipped one-hour Shanghai scenario, run once and shared.
const ScenarioConfig& shanghai_config() {
  static const ScenarioConfig cfg = load_scenario_config(kSource / "configs/starlink_shanghai.json");
  return cfg;
}
const ScenarioResult& shanghai() {
  static const ScenarioResult r = run_scenario(shanghai_config());
  return r;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome scheme_ordering() {
  const auto start = std::chrono::steady_clock::now();
  const auto& cfg = shanghai_config();
  const auto& r = shanghai();
  if (r.report.partial) return {false, "run was partial: " + r.report.error};

  double core_km = -1.0;
  for (const auto& gs : cfg.ground_stations) {
    if (gs.attached_to_core) core_km = great_circle_km(cfg.ue_groups.at(0).center, gs.location);
  }

  // Latency of every scheme per event, keyed by (ue, trigger time).
  std::map<std::pair<UeId, double>, std::map<Scheme, double>> events;
  std::map<std::pair<UeId, double>, bool> broken;
  for (const auto& rec : r.records) {
    const auto key = std::make_pair(rec.ue_id, rec.t_trigger);
    if (rec.failed) broken[key] = true;
    events[key][rec.scheme] = rec.latency_ms;
  }
  std::size_t ordered = 0;
  for (const auto& [key, lat] : events) {
    if (broken.count(key) || lat.size() != 4) continue;
    const double p = lat.at(Scheme::Proposed), n = lat.at(Scheme::NTN);
    const double gs = lat.at(Scheme::NTN_GS), smn = lat.at(Scheme::NTN_SMN);
    ordered += p < gs && p < smn && gs < n && smn < n;
  }
  const double frac = events.empty() ? 0.0 : static_cast<double>(ordered) / static_cast<double>(events.size());
  const double secs = elapsed_s(start);
  const bool ok = r.report.num_ues == 100 && cfg.duration_s == 3600.0 && core_km >= 8000.0 &&
                  core_km <= 10000.0 && frac >= 0.99 && secs < 120.0;
  return {ok, fmt("%zu events, %.2f%% ordered, core %.0f km away, %.1f s", events.size(),
                  100.0 * frac, core_km, secs)};
}

Outcome headline_ratio() {
  const auto& rep = shanghai().report;
  const auto* p = rep.find(Scheme::Proposed);
  const auto* n = rep.find(Scheme::NTN);
  const auto* gs = rep.find(Scheme::NTN_GS);
  const auto* smn = rep.find(Scheme::NTN_SMN);
  if (!p || !n || !gs || !smn || p->mean_ms <= 0.0) return {false, "missing scheme summaries"};
  const double ratio = n->mean_ms / p->mean_ms;
  const bool ok = ratio >= 5.0 && p->mean_ms >= 15.0 && p->mean_ms <= 30.0 && n->mean_ms >= 150.0 &&
                  n->mean_ms <= 350.0;
  return {ok, fmt("NTN/Proposed %.2f (>= 5), Proposed %.2f ms (band 15-30), NTN %.2f ms (band 150-350),"
                  " NTN-GS %.2f ms, NTN-SMN %.2f ms",
                  ratio, p->mean_ms, n->mean_ms, gs->mean_ms, smn->mean_ms)};
}

// Table rows that get a trigger time are checked against a 1 ms scan of
// the brute-force selection over the same window.
Outcome search_precision() {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = constellation_preset("starlink");
  const AnalyticEphemeris eph(build_walker_constellation(cfg));
  const SyncContext ctx{{&eph, cfg.min_elevation_deg, {}, 0.0}, 9};
  oracle::Gen g(2024);

  SyncTable table = make_sync_table(0.0, 5.0);
  {
    const SatelliteSnapshot at0(ctx.prediction, 0.0), at5(ctx.prediction, 5.0);
    for (UeId id = 0; id < 2000; ++id) {
      const UserInfo u{id, g.point(60.0), g.strategy()};
      apply_ue_event(table, u, UeEventKind::Register, ctx, at0, at5);
    }
  }
  std::size_t checked = 0, within = 0;
  double worst = 0.0;
  while (checked < 1000) {
    const double t = table.T + table.delta_t;
    table = periodic_update(table, t, ctx);
    for (const auto& [id, row] : table.rows) {
      if (row.t_p == 0.0 || checked >= 1000) continue;
      const auto want = oracle::scan_trigger(eph, row.user.position, cfg.min_elevation_deg, row.user.strategy,
                                             row.access_sat, table.T, table.T + table.delta_t, 1e-3, 8.0);
      ++checked;
      if (!want) {
        worst = std::max(worst, 1e9);
        continue;
      }
      const double err = std::abs(row.t_p - *want);
      worst = std::max(worst, err);
      within += err <= 0.010;
    }
  }
  const double secs = elapsed_s(start);
  return {within == checked && secs < 30.0,
          fmt("%zu/%zu triggers within 10 ms, worst %.4f s, %.1f s", within, checked, worst, secs)};
}

Outcome prediction_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  oracle::Gen g(4242);
  std::size_t mismatches = 0, users_checked = 0, max_sats = 0, max_users = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const auto cfg = inst == 0 ? constellation_preset("starlink") : g.shell(40, 50);
    const AnalyticEphemeris eph(build_walker_constellation(cfg));
    AvailabilityMask mask;
    if (g.coin(0.3)) {
      for (SatId id = 0; id < eph.size(); ++id) {
        if (g.coin(0.05)) mask.block(id);
      }
    }
    const PredictionContext ctx{&eph, cfg.min_elevation_deg, mask, 0.0};
    const double t = g.uniform(0.0, 6000.0), t2 = t + g.uniform(1.0, 30.0);
    const auto now_states = eph.states_at(t);
    const auto later_states = eph.states_at(t2);

    std::vector<UEState> users(static_cast<std::size_t>(g.integer(1, 500)));
    AccessMap now;
    now.t = t;
    for (std::size_t i = 0; i < users.size(); ++i) {
      users[i].ue_id = static_cast<UeId>(i);
      users[i].position = g.point(90.0);
      users[i].strategy = g.strategy();
      now.access[users[i].ue_id] =
          oracle::select(users[i].position, now_states, cfg.min_elevation_deg, users[i].strategy, {}, mask);
    }
    const auto got = predict_access_map(now, users, t2, ctx);
    for (const auto& u : users) {
      const auto want = oracle::select(u.position, later_states, cfg.min_elevation_deg, u.strategy,
                                       now.at(u.ue_id), mask);
      mismatches += got.at(u.ue_id) != want;
      ++users_checked;
    }
    max_sats = std::max<std::size_t>(max_sats, eph.size());
    max_users = std::max(max_users, users.size());
  }
  const double secs = elapsed_s(start);
  return {mismatches == 0 && max_sats <= 2000 && secs < 60.0,
          fmt("%zu mismatches over %zu UEs in 200 instances (up to %zu sats, %zu UEs), %.1f s", mismatches,
              users_checked, max_sats, max_users, secs)};
}

Outcome coverage_time() {
  const auto start = std::chrono::steady_clock::now();
  oracle::Gen g(5);
  std::vector<GeodeticPoint> observers;
  for (int i = 0; i < 20; ++i) observers.push_back(g.point(45.0));
  std::string detail;
  bool ok = true;
  for (const auto& [preset, target] : {std::pair{"starlink", 132.0}, std::pair{"kuiper", 187.0}}) {
    const auto cfg = constellation_preset(preset);
    const AnalyticEphemeris eph(build_walker_constellation(cfg));
    const auto stats = measure_passes(eph, observers, cfg.min_elevation_deg, 7200.0);
    ok = ok && stats.passes > 0 && std::abs(stats.mean_s - target) <= 0.15 * target;
    detail += fmt("%s %.1f s over %zu passes (target %.0f +-15%%); ", preset, stats.mean_s, stats.passes, target);
  }
  const double secs = elapsed_s(start);
  return {ok && secs < 60.0, detail + fmt("%.1f s", secs)};
}

Outcome direction_constraint() {
  auto cfg = shanghai_config();
  cfg.schemes = {Scheme::Proposed};
  cfg.ping_stall = false;
  cfg.ue_groups.at(0).strategy.kind = StrategyKind::Flexible;
  cfg.ue_groups.at(0).strategy.direction_constrained = true;
  const auto on = run_scenario(cfg);
  cfg.ue_groups.at(0).strategy.direction_constrained = false;
  const auto off = run_scenario(cfg);
  if (on.report.partial || off.report.partial) return {false, "run was partial"};
  const auto* a = on.report.find(Scheme::Proposed);
  const auto* b = off.report.find(Scheme::Proposed);
  std::size_t far = 0;
  for (const auto& rec : off.records) far += !rec.failed && rec.breakdown.ran_ran_ms > a->max_ran_ran_ms + 100.0;
  const bool ok = b->mean_ran_ran_ms > a->mean_ran_ran_ms && far > 0;
  return {ok, fmt("RAN-RAN mean %.2f -> %.2f ms (ratio %.1f), constrained max %.2f ms, %zu events > max + 100 ms",
                  a->mean_ran_ran_ms, b->mean_ran_ran_ms, b->mean_ran_ran_ms / a->mean_ran_ran_ms,
                  a->max_ran_ran_ms, far)};
}

Outcome prediction_throughput() {
  const auto flex = predict_bench(10000, StrategyKind::Flexible, "starlink");
  const auto cons = predict_bench(10000, StrategyKind::Consistent, "starlink");
  return {flex.wall_ms <= 2000.0 && cons.wall_ms < flex.wall_ms,
          fmt("10000 UEs: flexible %.1f ms (%zu candidates), consistent %.1f ms (%zu candidates)", flex.wall_ms,
              flex.candidates, cons.wall_ms, cons.candidates)};
}

ScenarioConfig mobility_config() {
  auto cfg = shanghai_config();
  cfg.name = "mobility";
  cfg.schemes = {Scheme::Proposed};
  cfg.ping_stall = false;
  cfg.seed = 3;
  cfg.ue_groups.clear();
  for (double speed : {1.5, 30.0, 83.0, 250.0}) {
    UeGroupSpec g;
    g.label = fmt("idle%.1f", speed);
    g.count = 100;
    g.center = {31.2, 121.5, 0.0};
    g.radius_km = 300.0;
    g.strategy = {StrategyKind::Consistent, true};
    g.speed_mps = speed;
    g.active = false;  // reports every 600 s
    cfg.ue_groups.push_back(g);
  }
  auto active = cfg.ue_groups.back();
  active.label = "active250";
  active.active = true;
  cfg.ue_groups.push_back(active);
  return cfg;
}

Outcome abnormal_properties() {
  const auto* stationary = shanghai().report.find(Scheme::Proposed);
  const auto cfg = mobility_config();
  const auto r = run_scenario(cfg);
  if (r.report.partial) return {false, "run was partial: " + r.report.error};
  std::vector<std::size_t> total(cfg.ue_groups.size()), abnormal(cfg.ue_groups.size());
  for (const auto& rec : r.records) {
    if (rec.failed) continue;
    const auto grp = r.ue_group.at(rec.ue_id);
    ++total[grp];
    abnormal[grp] += rec.abnormal;
  }
  std::vector<double> rate(total.size());
  for (std::size_t i = 0; i < total.size(); ++i) {
    rate[i] = total[i] ? static_cast<double>(abnormal[i]) / static_cast<double>(total[i]) : 0.0;
  }
  const bool monotone = rate[0] <= rate[1] && rate[1] <= rate[2] && rate[2] <= rate[3];
  const bool ok = stationary && stationary->abnormal == 0 && monotone && rate[3] > 0.0 && rate[4] < 1e-3;
  return {ok, fmt("stationary exact %zu abnormal; idle 1.5/30/83/250 m/s %.4f/%.4f/%.4f/%.4f;"
                  " active 250 m/s %.5f (reported 0.07 train, 0.18 airplane)",
                  stationary ? stationary->abnormal : 0, rate[0], rate[1], rate[2], rate[3], rate[4])};
}

Outcome determinism() {
  std::size_t identical = 0, runs = 0;
  auto compare = [&](const ScenarioResult& a, const ScenarioResult& b) {
    ++runs;
    identical += records_csv(a.records) == records_csv(b.records) && report_json(a.report) == report_json(b.report);
  };
  compare(shanghai(), run_scenario(shanghai_config()));

  auto perturbed = mobility_config();
  perturbed.duration_s = 900.0;
  perturbed.ephemeris_error = {EphemerisErrorModel::DailyKmSigma, 3.0};
  compare(run_scenario(perturbed), run_scenario(perturbed));

  // Written files too, not only the in-memory strings.
  const auto base = fs::temp_directory_path() / "leoho_acceptance";
  fs::remove_all(base);
  auto small = shanghai_config();
  small.duration_s = 600.0;
  write_outputs(run_scenario(small), base / "a");
  write_outputs(run_scenario(small), base / "b");
  ++runs;
  identical += read_text_file(base / "a/records.csv") == read_text_file(base / "b/records.csv") &&
               read_text_file(base / "a/report.json") == read_text_file(base / "b/report.json");
  return {identical == runs, fmt("%zu/%zu scenario pairs byte-identical", identical, runs)};
}

Outcome sync_invariants() {
  const auto& rep = shanghai().report;
  const bool ok = shanghai_config().check_sync_invariants && rep.sync_operations > 0 &&
                  rep.sync_invariant_violations == 0 && rep.stationary_rapid_handovers == 0 &&
                  rep.routing_mismatches == 0;
  return {ok, fmt("%zu table operations, %zu invariant violations, %zu rapid handovers, %zu routing mismatches",
                  rep.sync_operations, rep.sync_invariant_violations, rep.stationary_rapid_handovers,
                  rep.routing_mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"scheme ordering", scheme_ordering},
      {"headline ratio and bands", headline_ratio},
      {"trigger search precision", search_precision},
      {"fast prediction equals brute force", prediction_equivalence},
      {"coverage time", coverage_time},
      {"direction constraint effect", direction_constraint},
      {"prediction throughput", prediction_throughput},
      {"abnormal handover properties", abnormal_properties},
      {"determinism", determinism},
      {"sync invariants", sync_invariants},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, check] : criteria) {
    ++n;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s C%d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
