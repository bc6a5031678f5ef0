#include "leoho/scenario.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "json_support.hpp"
#include "leoho/ephemeris.hpp"
#include "leoho/io.hpp"
#include "leoho/mobility.hpp"
#include "leoho/prediction.hpp"
#include "leoho/sync_table.hpp"

namespace leoho {

namespace {

using detail::get_or;
using detail::json;

constexpr double kTimeEps = 1e-9;
constexpr double kDefaultInactiveUplinkS = 600.0;
// How far ahead the core looks for the source satellite's successor.
constexpr double kSuccessorHorizonS = 300.0;
constexpr int kTriggerRefineIterations = 30;

bool is_multiple(double value, double step) {
  const double r = value / step;
  return std::abs(r - std::round(r)) < 1e-9 * std::max(1.0, r);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

GeodeticPoint point_from_json(const json& j) {
  GeodeticPoint p;
  p.lat_deg = j.at("lat").get<double>();
  p.lon_deg = j.at("lon").get<double>();
  return p;
}

UeGroupSpec group_from_json(const json& j, std::size_t index) {
  const std::string where = "ue_groups[" + std::to_string(index) + "]";
  check_keys(j,
             {"label", "count", "region", "strategy", "direction_constrained", "speed_mps",
              "heading_deg", "active", "uplink_period_s"},
             where);
  UeGroupSpec g;
  g.label = get_or<std::string>(j, "label", "group" + std::to_string(index));
  g.count = j.at("count").get<std::size_t>();
  const auto& region = j.at("region");
  check_keys(region, {"lat", "lon", "radius_km"}, where + ".region");
  g.center = point_from_json(region);
  g.radius_km = get_or(region, "radius_km", 0.0);
  g.strategy.kind = parse_strategy(get_or<std::string>(j, "strategy", "flexible"));
  g.strategy.direction_constrained = get_or(j, "direction_constrained", true);
  g.speed_mps = get_or(j, "speed_mps", 0.0);
  if (j.contains("heading_deg") && !j.at("heading_deg").is_null()) {
    g.heading_deg = j.at("heading_deg").get<double>();
  }
  g.active = get_or(j, "active", true);
  if (j.contains("uplink_period_s")) g.uplink_period_s = j.at("uplink_period_s").get<double>();
  return g;
}

EphemerisError ephemeris_error_from_json(const json& j) {
  EphemerisError e;
  if (j.is_string()) {
    if (j.get<std::string>() != "none") throw ConfigError("ephemeris_error: expected 'none' or an object");
    return e;
  }
  check_keys(j, {"model", "sigma"}, "ephemeris_error");
  const auto model = j.at("model").get<std::string>();
  if (model == "none") {
    e.model = EphemerisErrorModel::None;
  } else if (model == "daily_km_sigma") {
    e.model = EphemerisErrorModel::DailyKmSigma;
  } else if (model == "minute_cm_sigma") {
    e.model = EphemerisErrorModel::MinuteCmSigma;
  } else {
    throw ConfigError("ephemeris_error: unknown model '" + model + "'");
  }
  e.sigma = get_or(j, "sigma", 0.0);
  return e;
}

std::vector<GroundStation> ground_stations_from_json(const json& j,
                                                     const std::filesystem::path& base_dir) {
  if (j.is_string()) return read_ground_stations_csv(base_dir / j.get<std::string>());
  std::vector<GroundStation> out;
  for (const auto& item : j) {
    check_keys(item, {"id", "lat", "lon", "core"}, "ground_stations");
    GroundStation gs;
    gs.gs_id = item.at("id").get<std::string>();
    gs.location = point_from_json(item);
    gs.attached_to_core = get_or(item, "core", false);
    out.push_back(std::move(gs));
  }
  return out;
}

UserInfo info_of(const UEState& ue, const GeodeticPoint& where) {
  return UserInfo{ue.ue_id, where, ue.strategy};
}

// Along-track offsets for the core's ephemeris.
std::shared_ptr<const EphemerisSource> core_view(std::shared_ptr<const EphemerisSource> truth,
                                                 const EphemerisError& err, std::uint64_t seed) {
  if (err.model == EphemerisErrorModel::None || err.sigma == 0.0) return truth;
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
  std::normal_distribution<double> offset(0.0, err.sigma_km());
  std::vector<double> km(truth->size());
  for (auto& v : km) v = offset(rng);
  return std::make_shared<PerturbedEphemeris>(std::move(truth), std::move(km));
}

struct HandoverEvent {
  UeId ue = 0;
  SatId src = 0;
  SatId dst = 0;
  double t = 0.0;
  bool abnormal = false;
  double execution_ms = 0.0;
};

// The core's downlink route may lag or lead the RAN by the trigger-time
// uncertainty plus the handover execution itself.
constexpr double kRouteToleranceS = 0.010;

class Engine {
 public:
  explicit Engine(const ScenarioConfig& cfg) : cfg_(cfg) {
    if (cfg.ephemeris_trace) {
      truth_ = load_ephemeris_trace(*cfg.ephemeris_trace, cfg.constellation);
    } else {
      truth_ = std::make_shared<AnalyticEphemeris>(build_walker_constellation(cfg.constellation));
    }
    core_ = core_view(truth_, cfg.ephemeris_error, cfg.seed);
    const AvailabilityMask mask(cfg.weather_mask);
    truth_ctx_ = {truth_.get(), cfg.constellation.min_elevation_deg, mask, 0.0};
    sync_ctx_.prediction = {core_.get(), cfg.constellation.min_elevation_deg, mask, 0.0};
    sync_ctx_.iterations = cfg.binary_search_iterations;
    ues_ = generate_ues(cfg);
    for (const auto& g : cfg.ue_groups) {
      for (std::size_t i = 0; i < g.count; ++i) group_of_.push_back(&g - cfg.ue_groups.data());
    }
  }

  ScenarioResult run() {
    const auto wall_start = std::chrono::steady_clock::now();
    ScenarioResult result;
    result.ue_group = group_of_;
    auto& rep = result.report;
    rep.scenario = cfg_.name;
    rep.seed = cfg_.seed;
    rep.duration_s = cfg_.duration_s;
    rep.num_ues = ues_.size();
    try {
      loop(result);
    } catch (const std::exception& e) {
      rep.partial = true;
      rep.error = e.what();
    }
    rep.sync_operations = sync_ops_;
    rep.sync_invariant_violations = violations_;
    rep.service_gaps = gaps_;
    rep.handover_events = events_.size();
    rep.stationary_rapid_handovers = rapid_handovers();
    rep.routing_mismatches = routing_mismatches();
    for (Scheme s : cfg_.schemes) {
      rep.schemes.push_back(summarize(s, result.records, result.stall_ms));
    }
    result.timing.total_wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return result;
  }

 private:
  void loop(ScenarioResult& result) {
    const auto epochs = static_cast<std::size_t>(std::llround(cfg_.duration_s / cfg_.epoch_s));
    const double dt = cfg_.delta_t;

    access_.assign(ues_.size(), std::nullopt);
    core_pos_.resize(ues_.size());
    last_uplink_.assign(ues_.size(), 0.0);

    // Attach everyone at t = 0; the core learns the serving satellite from
    // the registration itself.
    {
      const SatelliteSnapshot snap(truth_ctx_, 0.0);
      core_T_.emplace(sync_ctx_.prediction, 0.0);
      core_H_.emplace(sync_ctx_.prediction, dt);
      table_ = make_sync_table(0.0, dt);
      for (std::size_t u = 0; u < ues_.size(); ++u) {
        access_[u] = snap.resolve(ues_[u].position, ues_[u].strategy, std::nullopt);
        core_pos_[u] = ues_[u].position;
        apply_ue_event(table_, info_of(ues_[u], core_pos_[u]), UeEventKind::Register, sync_ctx_,
                       *core_T_, *core_H_, access_[u]);
        after_sync_op();
      }
    }

    for (std::size_t k = 1; k <= epochs; ++k) {
      const double t = static_cast<double>(k) * cfg_.epoch_s;
      for (auto& ue : ues_) {
        if (ue.mobility.moving()) ue = step_mobility(ue, cfg_.epoch_s);
      }
      const SatelliteSnapshot snap(truth_ctx_, t);
      std::optional<IslGraph> graph;
      for (std::size_t u = 0; u < ues_.size(); ++u) ran_step(u, t, snap, graph, result);

      if (t >= table_.T + dt - kTimeEps) {
        const auto start = std::chrono::steady_clock::now();
        core_T_ = std::move(core_H_);
        core_H_.emplace(sync_ctx_.prediction, t + dt);
        PredictionStats stats;
        table_ = periodic_update(table_, t, sync_ctx_, *core_H_, &stats);
        result.timing.prediction_update_ms.push_back(
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count());
        ++result.report.prediction_updates;
        result.report.prediction_candidates += stats.candidates;
        after_sync_op();
      }

      for (std::size_t u = 0; u < ues_.size(); ++u) {
        uplink(u, t);
        sample_route(u, t);
      }
    }
  }

  void sample_route(std::size_t u, double t) {
    if (!access_[u]) return;
    const auto route = route_downlink(table_, ues_[u].ue_id, t);
    if (!route || route->sat != *access_[u]) route_misses_.emplace_back(ues_[u].ue_id, t);
  }

  std::size_t routing_mismatches() const {
    std::map<UeId, std::vector<const HandoverEvent*>> by_ue;
    for (const auto& e : events_) by_ue[e.ue].push_back(&e);
    std::size_t n = 0;
    for (const auto& [ue, t] : route_misses_) {
      bool excused = false;
      for (const auto* e : by_ue[ue]) {
        excused = excused || (t >= e->t - kRouteToleranceS &&
                              t <= e->t + kRouteToleranceS + e->execution_ms / 1000.0);
      }
      if (!excused) ++n;
    }
    return n;
  }

  // RAN-side selection for one UE over (t - epoch, t].
  void ran_step(std::size_t u, double t, const SatelliteSnapshot& snap,
                std::optional<IslGraph>& graph, ScenarioResult& result) {
    const UEState& ue = ues_[u];
    auto prev = access_[u];
    auto cur = snap.resolve(ue.position, ue.strategy, prev);
    if (!prev) {
      access_[u] = cur;
      if (cur) {
        // Re-attachment after a gap reaches the core like a registration.
        core_pos_[u] = ue.position;
        apply_ue_event(table_, info_of(ue, ue.position), UeEventKind::Move, sync_ctx_, *core_T_,
                       *core_H_, cur);
        after_sync_op();
      }
      return;
    }
    if (!cur) {
      ++gaps_;
      access_[u] = std::nullopt;
      return;
    }

    double lo = t - cfg_.epoch_s;
    // A flexible UE can switch more than once within an epoch.
    for (int guard = 0; guard < 8 && cur != prev; ++guard) {
      const auto fn = make_access_fn(info_of(ue, ue.position), prev, snap, cfg_.epoch_s,
                                     truth_ctx_);
      double hi = t;
      for (int i = 0; i < kTriggerRefineIterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fn(mid) == prev ? lo : hi) = mid;
      }
      const auto target = fn(hi);
      if (!target) {
        ++gaps_;
        access_[u] = std::nullopt;
        return;
      }
      handover(u, *prev, *target, hi, snap, graph, result);
      prev = target;
      lo = hi;
      cur = snap.resolve(ue.position, ue.strategy, prev);
      if (!cur) {
        ++gaps_;
        access_[u] = std::nullopt;
        return;
      }
    }
    access_[u] = prev;
  }

  // The satellite the core expects to take over from `src`, evaluated with
  // the core's ephemeris and its last known UE location.
  std::optional<SatId> predicted_target(std::size_t u, SatId src, double tau) const {
    const double window = tau + kSuccessorHorizonS - core_T_->time();
    const auto fn = make_access_fn(info_of(ues_[u], core_pos_[u]), src, *core_T_, window,
                                   sync_ctx_.prediction);
    try {
      if (const auto sel = fn(tau); sel != src) return sel;
      for (double s = tau + 1.0; s <= tau + kSuccessorHorizonS; s += 1.0) {
        if (fn(s) == src) continue;
        // Evaluate right at the core's own switch instant.
        double lo = s - 1.0, hi = s;
        for (int i = 0; i < kTriggerRefineIterations; ++i) {
          const double mid = 0.5 * (lo + hi);
          (fn(mid) == src ? lo : hi) = mid;
        }
        return fn(hi);
      }
    } catch (const std::out_of_range&) {
      // Ran past the end of a replayed trace.
    }
    return std::nullopt;
  }

  void handover(std::size_t u, SatId src, SatId dst, double tau, const SatelliteSnapshot& snap,
                std::optional<IslGraph>& graph, ScenarioResult& result) {
    const UEState& ue = ues_[u];
    const bool abnormal = detect_abnormal(predicted_target(u, src, tau), dst);
    events_.push_back({ue.ue_id, src, dst, tau, abnormal});

    if (!graph) {
      graph.emplace(build_isl_grid(cfg_.constellation, snap.states(), cfg_.ground_stations,
                                   cfg_.topology, snap.time()));
    }
    for (Scheme s : cfg_.schemes) {
      auto rec = execute_handover(s, ue.ue_id, ue.position, src, dst, *graph, cfg_.handover, tau,
                                  s == Scheme::Proposed && abnormal);
      if (cfg_.ping_stall) result.stall_ms.push_back(ping_stall_ms(rec, ue.position, *graph, cfg_.handover));
      if (s == Scheme::Proposed && !rec.failed) events_.back().execution_ms = rec.latency_ms;
      result.records.push_back(rec);
    }

    if (abnormal) {
      // Fallback path switch: the core learns the real target and location.
      core_pos_[u] = ue.position;
      apply_ue_event(table_, info_of(ue, ue.position), UeEventKind::Move, sync_ctx_, *core_T_,
                     *core_H_, dst);
      after_sync_op();
    }
  }

  void uplink(std::size_t u, double t) {
    const UEState& ue = ues_[u];
    if (ue.uplink_period_s <= 0.0 || t - last_uplink_[u] < ue.uplink_period_s - kTimeEps) return;
    last_uplink_[u] = t;
    if (ue.position == core_pos_[u]) return;
    core_pos_[u] = ue.position;
    apply_ue_event(table_, info_of(ue, ue.position), UeEventKind::Move, sync_ctx_, *core_T_,
                   *core_H_);
    after_sync_op();
  }

  void after_sync_op() {
    ++sync_ops_;
    if (!cfg_.check_sync_invariants) return;
    try {
      check_invariants(table_);
    } catch (const SyncContractError&) {
      ++violations_;
    }
  }

  std::size_t rapid_handovers() const {
    std::map<UeId, double> last;
    std::size_t n = 0;
    for (const auto& e : events_) {
      if (ues_[e.ue].mobility.moving()) continue;
      auto it = last.find(e.ue);
      if (it != last.end() && e.t - it->second < cfg_.delta_t) ++n;
      last[e.ue] = e.t;
    }
    return n;
  }

  const ScenarioConfig& cfg_;
  std::shared_ptr<const EphemerisSource> truth_;
  std::shared_ptr<const EphemerisSource> core_;
  PredictionContext truth_ctx_;
  SyncContext sync_ctx_;
  std::vector<UEState> ues_;
  std::vector<std::size_t> group_of_;

  std::vector<std::optional<SatId>> access_;
  std::vector<GeodeticPoint> core_pos_;
  std::vector<double> last_uplink_;
  SyncTable table_;
  std::optional<SatelliteSnapshot> core_T_;
  std::optional<SatelliteSnapshot> core_H_;

  std::vector<HandoverEvent> events_;
  std::vector<std::pair<UeId, double>> route_misses_;
  std::size_t gaps_ = 0;
  std::size_t sync_ops_ = 0;
  std::size_t violations_ = 0;
};

}  // namespace

double EphemerisError::sigma_km() const {
  switch (model) {
    case EphemerisErrorModel::None:
      return 0.0;
    case EphemerisErrorModel::DailyKmSigma:
      return sigma;
    case EphemerisErrorModel::MinuteCmSigma:
      return sigma * 1e-5;
  }
  return 0.0;
}

void validate(const ScenarioConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  try {
    validate(cfg.constellation);
    validate(cfg.handover);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (!(cfg.duration_s > 0.0)) fail("duration_s must be > 0");
  if (!(cfg.delta_t > 0.0)) fail("delta_t must be > 0");
  if (!(cfg.epoch_s > 0.0)) fail("epoch_s must be > 0");
  if (!is_multiple(cfg.delta_t, cfg.epoch_s)) fail("delta_t must be a multiple of epoch_s");
  if (!is_multiple(cfg.duration_s, cfg.epoch_s)) fail("duration_s must be a multiple of epoch_s");
  if (cfg.binary_search_iterations < 0) fail("binary_search_iterations must be >= 0");
  if (cfg.schemes.empty()) fail("at least one scheme is required");
  if (std::set<Scheme>(cfg.schemes.begin(), cfg.schemes.end()).size() != cfg.schemes.size()) {
    fail("duplicate scheme");
  }
  if (cfg.ue_groups.empty()) fail("at least one UE group is required");
  if (cfg.ephemeris_error.sigma < 0.0) fail("ephemeris_error.sigma must be >= 0");
  bool has_core = false;
  for (const auto& gs : cfg.ground_stations) {
    try {
      validate(gs.location);
    } catch (const std::invalid_argument& e) {
      fail("ground station " + gs.gs_id + ": " + e.what());
    }
    has_core = has_core || gs.attached_to_core;
  }
  for (Scheme s : cfg.schemes) {
    if (s == Scheme::NTN && !has_core) fail("NTN needs a core-attached ground station");
    if (s == Scheme::NTN_GS && cfg.ground_stations.empty()) fail("NTN-GS needs ground stations");
  }
  if (cfg.ping_stall && !has_core) fail("ping_stall needs a core-attached ground station");
  for (const auto& g : cfg.ue_groups) {
    if (g.count == 0) fail("UE group " + g.label + " is empty");
    if (!(g.radius_km >= 0.0)) fail("UE group " + g.label + ": radius_km must be >= 0");
    if (!(g.speed_mps >= 0.0)) fail("UE group " + g.label + ": speed_mps must be >= 0");
    if (g.heading_deg && !(*g.heading_deg >= 0.0 && *g.heading_deg < 360.0)) {
      fail("UE group " + g.label + ": heading_deg must be in [0, 360)");
    }
    if (g.uplink_period_s && !(*g.uplink_period_s >= 0.0)) {
      fail("UE group " + g.label + ": uplink_period_s must be >= 0");
    }
    try {
      validate(g.center);
    } catch (const std::invalid_argument& e) {
      fail("UE group " + g.label + ": " + e.what());
    }
  }
  const std::size_t n = cfg.constellation.total();
  for (SatId id : cfg.weather_mask) {
    if (id >= n) fail("weather_mask names unknown satellite " + std::to_string(id));
  }
  for (SatId id : cfg.topology.smn_hosts) {
    if (id >= n) fail("smn_hosts names unknown satellite " + std::to_string(id));
  }
}

ScenarioConfig parse_scenario_json(std::string_view text, const std::filesystem::path& base_dir) {
  ScenarioConfig cfg;
  try {
    const json j = json::parse(text);
    check_keys(j,
               {"name", "constellation", "ephemeris_trace", "ground_stations", "core_anchor",
                "schemes", "ue_groups", "duration_s", "delta_t", "epoch_s", "seed",
                "weather_mask", "ephemeris_error", "handover", "topology",
                "binary_search_iterations", "ping_stall", "check_sync_invariants"},
               "scenario");
    cfg.name = get_or<std::string>(j, "name", cfg.name);
    if (j.contains("constellation")) {
      const auto& c = j.at("constellation");
      if (c.is_string() && c.get<std::string>().ends_with(".json")) {
        cfg.constellation = load_constellation_json(base_dir / c.get<std::string>());
      } else {
        cfg.constellation = detail::constellation_from_json(c);
      }
    }
    if (j.contains("ephemeris_trace")) {
      cfg.ephemeris_trace = base_dir / j.at("ephemeris_trace").get<std::string>();
    }
    if (j.contains("ground_stations")) {
      cfg.ground_stations = ground_stations_from_json(j.at("ground_stations"), base_dir);
    }
    if (j.contains("core_anchor")) {
      std::vector<std::string> anchors;
      const auto& a = j.at("core_anchor");
      if (a.is_string()) {
        anchors.push_back(a.get<std::string>());
      } else {
        anchors = a.get<std::vector<std::string>>();
      }
      for (auto& gs : cfg.ground_stations) gs.attached_to_core = false;
      for (const auto& id : anchors) {
        bool found = false;
        for (auto& gs : cfg.ground_stations) {
          if (gs.gs_id == id) gs.attached_to_core = found = true;
        }
        if (!found) throw ConfigError("core_anchor names unknown ground station " + id);
      }
    }
    if (j.contains("schemes")) {
      cfg.schemes.clear();
      for (const auto& s : j.at("schemes")) cfg.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    cfg.ue_groups.clear();
    if (j.contains("ue_groups")) {
      std::size_t i = 0;
      for (const auto& g : j.at("ue_groups")) cfg.ue_groups.push_back(group_from_json(g, i++));
    }
    cfg.duration_s = get_or(j, "duration_s", cfg.duration_s);
    cfg.delta_t = get_or(j, "delta_t", cfg.delta_t);
    cfg.epoch_s = get_or(j, "epoch_s", cfg.epoch_s);
    cfg.seed = get_or(j, "seed", cfg.seed);
    cfg.weather_mask = get_or(j, "weather_mask", cfg.weather_mask);
    if (j.contains("ephemeris_error")) {
      cfg.ephemeris_error = ephemeris_error_from_json(j.at("ephemeris_error"));
    }
    if (j.contains("handover")) {
      const auto& h = j.at("handover");
      check_keys(h, {"d_proc_ms", "rrc_setup_ms", "gs_core_lag_ms"}, "handover");
      cfg.handover.d_proc_ms = get_or(h, "d_proc_ms", cfg.handover.d_proc_ms);
      cfg.handover.rrc_setup_ms = get_or(h, "rrc_setup_ms", cfg.handover.rrc_setup_ms);
      cfg.handover.gs_core_lag_ms = get_or(h, "gs_core_lag_ms", cfg.handover.gs_core_lag_ms);
    }
    // One knob for both the cost model and the graph's terrestrial edge.
    cfg.topology.gs_core_lag_ms = cfg.handover.gs_core_lag_ms;
    if (j.contains("topology")) {
      const auto& t = j.at("topology");
      check_keys(t, {"seam", "gs_min_elevation_deg", "smn_hosts", "smn_host_index"}, "topology");
      const auto seam = get_or<std::string>(t, "seam", "wrap");
      if (seam == "wrap") {
        cfg.topology.seam = Seam::Wrap;
      } else if (seam == "open") {
        cfg.topology.seam = Seam::Open;
      } else {
        throw ConfigError("topology.seam must be 'wrap' or 'open'");
      }
      if (t.contains("gs_min_elevation_deg")) {
        cfg.topology.gs_min_elevation_deg = t.at("gs_min_elevation_deg").get<double>();
      }
      cfg.topology.smn_hosts = get_or(t, "smn_hosts", cfg.topology.smn_hosts);
      cfg.topology.smn_host_index = get_or(t, "smn_host_index", cfg.topology.smn_host_index);
    }
    cfg.binary_search_iterations = get_or(j, "binary_search_iterations", cfg.binary_search_iterations);
    cfg.ping_stall = get_or(j, "ping_stall", cfg.ping_stall);
    cfg.check_sync_invariants = get_or(j, "check_sync_invariants", cfg.check_sync_invariants);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario JSON: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& file) {
  std::string text;
  try {
    text = read_text_file(file);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return parse_scenario_json(text, file.parent_path());
}

std::vector<UEState> generate_ues(const ScenarioConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UEState> out;
  for (const auto& g : cfg.ue_groups) {
    for (std::size_t i = 0; i < g.count; ++i) {
      UEState ue;
      ue.ue_id = static_cast<UeId>(out.size());
      const double bearing = 360.0 * unit(rng);
      const double dist = g.radius_km * std::sqrt(unit(rng));
      const double heading = g.heading_deg ? *g.heading_deg : 360.0 * unit(rng);
      ue.position = great_circle_destination(g.center, bearing, dist);
      ue.mobility = g.speed_mps > 0.0 ? Mobility::great_circle(g.speed_mps, heading)
                                      : Mobility::stationary();
      ue.strategy = g.strategy;
      ue.active = g.active;
      ue.uplink_period_s =
          g.uplink_period_s ? *g.uplink_period_s : (g.active ? 1.0 : kDefaultInactiveUplinkS);
      out.push_back(ue);
    }
  }
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  Engine engine(cfg);
  return engine.run();
}

void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir) {
  write_text_file(dir / "records.csv", records_csv(result.records));
  write_text_file(dir / "report.json", report_json(result.report));
  write_text_file(dir / "timing.json", timing_json(result.timing));
}

}  // namespace leoho
