#include "leoho/sync_table.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace leoho {

namespace {

// Upper bound on how fast a LEO subpoint sweeps the ground (orbit plus
// Earth rotation), km/s.
constexpr double kMaxGroundTrackSpeedKms = 8.5;
constexpr double kTimeEps = 1e-9;

SyncEntry make_entry(const UserInfo& user, std::optional<SatId> access,
                     std::optional<SatId> next, double t_p) {
  SyncEntry e;
  e.user = user;
  e.access_sat = access;
  e.next_access_sat = next;
  e.t_p = access == next ? 0.0 : t_p;
  e.tunnel_ref = access ? tunnel_for(*access) : 0;
  return e;
}

struct PlannedSwitch {
  double t_p = 0.0;
  std::optional<SatId> next;
};

// Trigger time of the switch in [t0, t1] plus the access satellite at t1
// reached through it. The strategy is re-applied from whatever was taken at
// the switch, so a consistent UE keeps that satellite if it is still up at
// t1. An access satellite already stale at t0 switches immediately.
PlannedSwitch plan_switch(const AccessFn& fn, const UserInfo& ue, const SatelliteSnapshot& at_t1,
                          double t0, double t1, int iterations) {
  const auto start = fn(t0);
  const auto end = fn(t1);
  if (start == end) return {std::nextafter(t0, t1), at_t1.resolve(ue.position, ue.strategy, start)};
  double lo = t0;
  double hi = t1;
  auto taken = end;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const auto sel = fn(mid);
    if (sel == start) {
      lo = mid;
    } else {
      hi = mid;
      taken = sel;
    }
  }
  return {0.5 * (lo + hi), taken ? at_t1.resolve(ue.position, ue.strategy, taken) : end};
}

UEState as_ue(const UserInfo& u) {
  UEState ue;
  ue.ue_id = u.ue_id;
  ue.position = u.position;
  ue.strategy = u.strategy;
  return ue;
}

}  // namespace

std::uint64_t tunnel_for(SatId sat) { return (std::uint64_t{0x5A7E} << 32) | sat; }

double binary_search_trigger(const AccessFn& access_at, double t0, double t1, int iterations) {
  if (!(t1 > t0)) throw SyncContractError("binary search needs t1 > t0");
  if (iterations < 0) throw SyncContractError("iteration count must be >= 0");
  const auto start = access_at(t0);
  if (start == access_at(t1)) {
    throw SyncContractError("access satellite is identical at both window ends");
  }
  double lo = t0;
  double hi = t1;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (access_at(mid) == start) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

AccessFn make_access_fn(const UserInfo& ue, std::optional<SatId> from,
                        const SatelliteSnapshot& at_t1, double window_s,
                        const PredictionContext& ctx) {
  const double drift_deg =
      rad2deg(kMaxGroundTrackSpeedKms * std::abs(window_s) / kEarthRadiusKm);
  std::vector<SatId> pool =
      at_t1.index().candidates_near(ue.position, ctx.search_radius_deg() + drift_deg);
  if (from && std::find(pool.begin(), pool.end(), *from) == pool.end()) pool.push_back(*from);
  std::sort(pool.begin(), pool.end());

  const EphemerisSource* eph = ctx.ephemeris;
  const Vec3 obs = to_ecef(ue.position);
  return [pool = std::move(pool), eph, obs, ue, from, min_elev = ctx.min_elevation_deg,
          mask = ctx.mask](double t) -> std::optional<SatId> {
    std::vector<SatelliteState> visible;
    std::optional<Direction> from_dir;
    for (SatId id : pool) {
      const auto s = eph->state(id, t);
      if (from && id == *from) from_dir = s.direction;
      if (!mask.available(id)) continue;
      if (elevation_deg(obs, s.position_ecef_km) >= min_elev) visible.push_back(s);
    }
    return select_access_satellite(ue.position, visible, ue.strategy, from, from_dir);
  };
}

SyncTable make_sync_table(double T, double delta_t) {
  if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be > 0");
  SyncTable table;
  table.T = T;
  table.delta_t = delta_t;
  return table;
}

SyncTable periodic_update(const SyncTable& table, double t, const SyncContext& ctx,
                          PredictionStats* stats) {
  if (std::abs(t - (table.T + table.delta_t)) > kTimeEps) {
    throw SyncContractError("periodic update must run at T + delta_t");
  }
  if (table.rows.empty()) {
    if (stats) *stats = {};
    return make_sync_table(t, table.delta_t);
  }
  const SatelliteSnapshot snap(ctx.prediction, t + table.delta_t);
  return periodic_update(table, t, ctx, snap, stats);
}

SyncTable periodic_update(const SyncTable& table, double t, const SyncContext& ctx,
                          const SatelliteSnapshot& snap, PredictionStats* stats) {
  if (std::abs(t - (table.T + table.delta_t)) > kTimeEps) {
    throw SyncContractError("periodic update must run at T + delta_t");
  }
  const double horizon = t + table.delta_t;
  if (std::abs(snap.time() - horizon) > kTimeEps) {
    throw SyncContractError("snapshot is not at T + 2 delta_t");
  }
  SyncTable next = make_sync_table(t, table.delta_t);
  if (table.rows.empty()) {
    if (stats) *stats = {};
    return next;
  }

  AccessMap now;
  now.t = t;
  std::vector<UEState> users;
  users.reserve(table.rows.size());
  for (const auto& [id, row] : table.rows) {
    now.access[id] = row.next_access_sat;
    users.push_back(as_ue(row.user));
  }

  const AccessMap later = predict_access_map(now, users, snap, stats);

  for (const auto& [id, row] : table.rows) {
    const auto access = now.at(id);
    const auto upcoming = later.at(id);
    PlannedSwitch plan{0.0, upcoming};
    if (access != upcoming) {
      const auto fn = make_access_fn(row.user, access, snap, table.delta_t, ctx.prediction);
      plan = plan_switch(fn, row.user, snap, t, horizon, ctx.iterations);
    }
    next.rows.emplace(id, make_entry(row.user, access, plan.next, plan.t_p));
  }
  return next;
}

SyncTable on_ue_event(const SyncTable& table, const UserInfo& ue, UeEventKind kind,
                      const SyncContext& ctx, std::optional<SatId> known_access) {
  if (kind == UeEventKind::Deregister) {
    if (table.rows.count(ue.ue_id) == 0) {
      throw SyncContractError("UE " + std::to_string(ue.ue_id) + " is not registered");
    }
    SyncTable next = table;
    next.rows.erase(ue.ue_id);
    return next;
  }
  const SatelliteSnapshot at_T(ctx.prediction, table.T);
  const SatelliteSnapshot at_horizon(ctx.prediction, table.T + table.delta_t);
  return on_ue_event(table, ue, kind, ctx, at_T, at_horizon, known_access);
}

SyncTable on_ue_event(const SyncTable& table, const UserInfo& ue, UeEventKind kind,
                      const SyncContext& ctx, const SatelliteSnapshot& at_T,
                      const SatelliteSnapshot& at_horizon, std::optional<SatId> known_access) {
  SyncTable next = table;
  apply_ue_event(next, ue, kind, ctx, at_T, at_horizon, known_access);
  return next;
}

void apply_ue_event(SyncTable& table, const UserInfo& ue, UeEventKind kind,
                    const SyncContext& ctx, const SatelliteSnapshot& at_T,
                    const SatelliteSnapshot& at_horizon, std::optional<SatId> known_access) {
  const auto it = table.rows.find(ue.ue_id);
  const bool present = it != table.rows.end();
  if (kind == UeEventKind::Register && present) {
    throw SyncContractError("UE " + std::to_string(ue.ue_id) + " is already registered");
  }
  if (kind != UeEventKind::Register && !present) {
    throw SyncContractError("UE " + std::to_string(ue.ue_id) + " is not registered");
  }
  if (kind == UeEventKind::Deregister) {
    table.rows.erase(it);
    return;
  }

  const double T = table.T;
  const double horizon = T + table.delta_t;
  if (std::abs(at_T.time() - T) > kTimeEps || std::abs(at_horizon.time() - horizon) > kTimeEps) {
    throw SyncContractError("snapshots do not match the table window");
  }
  std::optional<SatId> access = known_access;
  if (!access) {
    std::optional<SatId> prev;
    if (present) prev = it->second.access_sat;
    access = at_T.resolve(ue.position, ue.strategy, prev);
  }
  PlannedSwitch plan{0.0, at_horizon.resolve(ue.position, ue.strategy, access)};
  if (access != plan.next) {
    const auto fn = make_access_fn(ue, access, at_horizon, table.delta_t, ctx.prediction);
    plan = plan_switch(fn, ue, at_horizon, T, horizon, ctx.iterations);
  }
  table.rows.insert_or_assign(ue.ue_id, make_entry(ue, access, plan.next, plan.t_p));
}

std::optional<DownlinkRoute> route_downlink(const SyncTable& table, UeId ue, double now) {
  auto it = table.rows.find(ue);
  if (it == table.rows.end()) throw std::out_of_range("UE " + std::to_string(ue) + " not in table");
  const SyncEntry& row = it->second;
  std::optional<SatId> sat = row.access_sat;
  if (row.t_p != 0.0 && now >= row.t_p) sat = row.next_access_sat;
  if (!sat) return std::nullopt;
  return DownlinkRoute{*sat, tunnel_for(*sat)};
}

void check_invariants(const SyncTable& table) {
  for (const auto& [id, row] : table.rows) {
    const bool same = row.access_sat == row.next_access_sat;
    if (same != (row.t_p == 0.0)) {
      throw SyncContractError("row " + std::to_string(id) + ": t_p disagrees with next-access");
    }
    if (!same && (row.t_p < table.T - kTimeEps || row.t_p > table.T + table.delta_t + kTimeEps)) {
      throw SyncContractError("row " + std::to_string(id) + ": t_p outside the update window");
    }
    if (row.user.ue_id != id) {
      throw SyncContractError("row " + std::to_string(id) + ": user id mismatch");
    }
  }
}

}  // namespace leoho
