#include "leoho/prediction.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leoho {

std::string_view to_string(StrategyKind k) {
  return k == StrategyKind::Consistent ? "consistent" : "flexible";
}

StrategyKind parse_strategy(std::string_view text) {
  std::string s(text);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "consistent") return StrategyKind::Consistent;
  if (s == "flexible") return StrategyKind::Flexible;
  throw std::invalid_argument("unknown access strategy: " + std::string(text));
}

void validate(const UEState& ue) {
  validate(ue.position);
  if (!(ue.mobility.speed_mps >= 0.0)) throw std::invalid_argument("UE speed must be >= 0");
  if (!(ue.mobility.heading_deg >= 0.0 && ue.mobility.heading_deg < 360.0)) {
    throw std::invalid_argument("UE heading must lie in [0, 360)");
  }
  if (!(ue.uplink_period_s >= 0.0)) throw std::invalid_argument("uplink period must be >= 0");
}

std::optional<SatId> select_access_satellite(const GeodeticPoint& ue,
                                             std::span<const SatelliteState> visible,
                                             const AccessStrategy& strategy,
                                             std::optional<SatId> prev,
                                             std::optional<Direction> prev_direction) {
  if (visible.empty()) return std::nullopt;
  if (prev) {
    for (const auto& s : visible) {
      if (s.sat_id == *prev) {
        if (strategy.kind == StrategyKind::Consistent) return prev;
        prev_direction = s.direction;
        break;
      }
    }
  }

  const Vec3 obs = to_ecef(ue);
  auto best_of = [&](bool filter) {
    std::optional<SatId> best;
    double best_elev = -1e9;
    for (const auto& s : visible) {
      if (filter && s.direction != *prev_direction) continue;
      const double e = elevation_deg(obs, s.position_ecef_km);
      if (!best || e > best_elev || (e == best_elev && s.sat_id < *best)) {
        best = s.sat_id;
        best_elev = e;
      }
    }
    return best;
  };

  if (strategy.direction_constrained && prev_direction) {
    if (auto same = best_of(true)) return same;
  }
  return best_of(false);
}

BlockIndex::BlockIndex(double block_size_deg, double t) : block_size_(block_size_deg), t_(t) {
  if (!(block_size_deg > 0.0)) throw std::invalid_argument("block size must be > 0");
  n_lat_ = std::max(1, static_cast<int>(std::floor(180.0 / block_size_deg)));
  n_lon_ = std::max(1, static_cast<int>(std::floor(360.0 / block_size_deg)));
  lat_step_ = 180.0 / n_lat_;
  lon_step_ = 360.0 / n_lon_;
  cells_.resize(static_cast<std::size_t>(n_lat_) * n_lon_);
}

int BlockIndex::lat_index(double lat_deg) const {
  return std::clamp(static_cast<int>(std::floor((lat_deg + 90.0) / lat_step_)), 0, n_lat_ - 1);
}

int BlockIndex::lon_index(double lon_deg) const {
  const double lon = normalize_lon_deg(lon_deg);
  return std::clamp(static_cast<int>(std::floor((lon + 180.0) / lon_step_)), 0, n_lon_ - 1);
}

BlockKey BlockIndex::key_of(const GeodeticPoint& p) const {
  if (p.lat_deg > kCapLatitudeDeg) return {kNorthCap, 0};
  if (p.lat_deg < -kCapLatitudeDeg) return {kSouthCap, 0};
  return {lat_index(p.lat_deg) - n_lat_ / 2, lon_index(p.lon_deg) - n_lon_ / 2};
}

void BlockIndex::insert(SatId id, const GeodeticPoint& subpoint) {
  const BlockKey key = key_of(subpoint);
  if (key.lat_band == kNorthCap) {
    north_cap_.push_back(id);
  } else if (key.lat_band == kSouthCap) {
    south_cap_.push_back(id);
  } else {
    cell(key.lat_band + n_lat_ / 2, key.lon_band + n_lon_ / 2).push_back(id);
  }
  ++count_;
}

std::span<const SatId> BlockIndex::block(const BlockKey& key) const {
  if (key.lat_band == kNorthCap) return north_cap_;
  if (key.lat_band == kSouthCap) return south_cap_;
  const int li = key.lat_band + n_lat_ / 2;
  const int lo = key.lon_band + n_lon_ / 2;
  if (li < 0 || li >= n_lat_ || lo < 0 || lo >= n_lon_) return {};
  return cell(li, lo);
}

std::vector<BlockKey> BlockIndex::neighborhood(const BlockKey& key) const {
  std::vector<BlockKey> out;
  if (key.lat_band == kNorthCap || key.lat_band == kSouthCap) {
    out.push_back(key);
    return out;
  }
  const int li = key.lat_band + n_lat_ / 2;
  const int lo = key.lon_band + n_lon_ / 2;
  for (int dl = -1; dl <= 1; ++dl) {
    const int l = li + dl;
    if (l < 0 || l >= n_lat_) continue;
    for (int dn = -1; dn <= 1; ++dn) {
      const int n = ((lo + dn) % n_lon_ + n_lon_) % n_lon_;
      BlockKey k{l - n_lat_ / 2, n - n_lon_ / 2};
      if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
  }
  return out;
}

std::vector<SatId> BlockIndex::candidates_near(const GeodeticPoint& p, double radius_deg) const {
  std::vector<SatId> out;
  const double lat_lo = p.lat_deg - radius_deg;
  const double lat_hi = p.lat_deg + radius_deg;
  if (lat_hi > kCapLatitudeDeg) out.insert(out.end(), north_cap_.begin(), north_cap_.end());
  if (lat_lo < -kCapLatitudeDeg) out.insert(out.end(), south_cap_.begin(), south_cap_.end());

  const int l0 = lat_index(std::max(lat_lo, -90.0));
  const int l1 = lat_index(std::min(lat_hi, 90.0));

  // Widest longitude reach of a spherical cap.
  bool all_lon = lat_hi >= 90.0 || lat_lo <= -90.0;
  double half_width = 180.0;
  if (!all_lon) {
    const double s = std::sin(deg2rad(radius_deg)) / std::cos(deg2rad(p.lat_deg));
    if (s >= 1.0) {
      all_lon = true;
    } else {
      half_width = rad2deg(std::asin(s));
    }
  }
  int first = 0;
  int span = n_lon_;
  if (!all_lon && 2.0 * half_width < 360.0 - lon_step_) {
    first = lon_index(p.lon_deg - half_width);
    const int last = lon_index(p.lon_deg + half_width);
    span = ((last - first) % n_lon_ + n_lon_) % n_lon_ + 1;
  }
  for (int l = l0; l <= l1; ++l) {
    for (int k = 0; k < span; ++k) {
      const auto& c = cell(l, (first + k) % n_lon_);
      out.insert(out.end(), c.begin(), c.end());
    }
  }
  return out;
}

BlockIndex build_block_index(std::span<const SatelliteState> states, double block_size_deg,
                             double t) {
  BlockIndex index(block_size_deg, t);
  for (const auto& s : states) index.insert(s.sat_id, s.subpoint);
  return index;
}

double PredictionContext::effective_block_size_deg() const {
  if (block_size_deg > 0.0) return block_size_deg;
  if (ephemeris == nullptr) throw std::invalid_argument("prediction context has no ephemeris");
  const auto& layout = ephemeris->layout();
  return coverage_angle_deg(layout.altitude_km, layout.min_elevation_deg);
}

double PredictionContext::search_radius_deg() const {
  if (ephemeris == nullptr) throw std::invalid_argument("prediction context has no ephemeris");
  const auto& layout = ephemeris->layout();
  return coverage_angle_deg(layout.altitude_km, min_elevation_deg) + 0.5;
}

SatelliteSnapshot::SatelliteSnapshot(const PredictionContext& ctx, double t)
    : ctx_(&ctx),
      t_(t),
      states_(ctx.ephemeris ? ctx.ephemeris->states_at(t)
                            : throw std::invalid_argument("prediction context has no ephemeris")),
      index_(build_block_index(states_, ctx.effective_block_size_deg(), t)),
      radius_deg_(ctx.search_radius_deg()) {}

bool SatelliteSnapshot::serves(const GeodeticPoint& ue, SatId id) const {
  if (id >= states_.size() || !ctx_->mask.available(id)) return false;
  return elevation_deg(to_ecef(ue), states_[id].position_ecef_km) >= ctx_->min_elevation_deg;
}

std::vector<SatelliteState> SatelliteSnapshot::visible_near(const GeodeticPoint& ue) const {
  const Vec3 obs = to_ecef(ue);
  std::vector<SatelliteState> out;
  for (SatId id : index_.candidates_near(ue, radius_deg_)) {
    if (!ctx_->mask.available(id)) continue;
    const auto& s = states_[id];
    if (elevation_deg(obs, s.position_ecef_km) >= ctx_->min_elevation_deg) out.push_back(s);
  }
  return out;
}

std::optional<SatId> SatelliteSnapshot::resolve(const GeodeticPoint& ue,
                                                const AccessStrategy& strategy,
                                                std::optional<SatId> prev) const {
  if (prev && strategy.kind == StrategyKind::Consistent && serves(ue, *prev)) return prev;
  std::optional<Direction> prev_dir;
  if (prev && *prev < states_.size()) prev_dir = states_[*prev].direction;
  const auto visible = visible_near(ue);
  return select_access_satellite(ue, visible, strategy, prev, prev_dir);
}

AccessMap predict_access_map(const AccessMap& current, std::span<const UEState> users,
                             double t_prime, const PredictionContext& ctx,
                             PredictionStats* stats) {
  if (!(t_prime > current.t)) {
    throw std::invalid_argument("prediction time must be later than the current access map");
  }
  // Step 1: satellite positions at t' (and step 3: their blocks).
  const SatelliteSnapshot snap(ctx, t_prime);
  return predict_access_map(current, users, snap, stats);
}

AccessMap predict_access_map(const AccessMap& current, std::span<const UEState> users,
                             const SatelliteSnapshot& snap, PredictionStats* stats) {
  if (!(snap.time() > current.t)) {
    throw std::invalid_argument("prediction time must be later than the current access map");
  }
  AccessMap next;
  next.t = snap.time();
  PredictionStats local;
  std::vector<const UEState*> candidates;
  // Step 2: only UEs that may change satellite need a search.
  for (const auto& ue : users) {
    const auto prev = current.at(ue.ue_id);
    if (ue.strategy.kind == StrategyKind::Consistent && prev && snap.serves(ue.position, *prev)) {
      next.access[ue.ue_id] = prev;
      ++local.retained;
    } else {
      candidates.push_back(&ue);
    }
  }
  local.candidates = candidates.size();
  // Step 4: resolve candidates from nearby blocks.
  for (const UEState* ue : candidates) {
    next.access[ue->ue_id] = snap.resolve(ue->position, ue->strategy, current.at(ue->ue_id));
  }
  if (stats) *stats = local;
  return next;
}

}  // namespace leoho
