#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "leoho/ephemeris.hpp"
#include "leoho/orbit.hpp"
#include "leoho/ue.hpp"

namespace leoho {

/// Access satellite per UE at one instant; nullopt marks a service gap.
struct AccessMap {
  double t = 0.0;
  std::map<UeId, std::optional<SatId>> access;

  std::optional<SatId> at(UeId ue) const {
    auto it = access.find(ue);
    return it == access.end() ? std::nullopt : it->second;
  }
  bool operator==(const AccessMap&) const = default;
};

/// Picks the serving satellite from `visible` (all assumed above the
/// elevation mask at one instant). Consistent keeps `prev` while visible;
/// otherwise the highest-elevation candidate wins, restricted to prev's
/// travel direction when constrained and such a candidate exists. Ties go
/// to the smaller id. `prev_direction` supplies prev's direction when prev
/// itself is no longer in `visible`.
std::optional<SatId> select_access_satellite(const GeodeticPoint& ue,
                                             std::span<const SatelliteState> visible,
                                             const AccessStrategy& strategy,
                                             std::optional<SatId> prev,
                                             std::optional<Direction> prev_direction = {});

struct BlockKey {
  int lat_band = 0;
  int lon_band = 0;

  auto operator<=>(const BlockKey&) const = default;
};

/// Satellites bucketed by subpoint into lat/lon blocks. Latitude bands
/// beyond +-80 deg collapse into a north and a south cap block.
class BlockIndex {
 public:
  static constexpr double kCapLatitudeDeg = 80.0;
  static constexpr int kNorthCap = 1 << 20;
  static constexpr int kSouthCap = -(1 << 20);

  BlockIndex(double block_size_deg, double t);

  double block_size_deg() const { return block_size_; }
  double lat_step_deg() const { return lat_step_; }
  double lon_step_deg() const { return lon_step_; }
  int lat_bands() const { return n_lat_; }
  int lon_bands() const { return n_lon_; }
  double time() const { return t_; }

  BlockKey key_of(const GeodeticPoint& p) const;
  void insert(SatId id, const GeodeticPoint& subpoint);
  std::span<const SatId> block(const BlockKey& key) const;
  std::size_t satellite_count() const { return count_; }

  /// The block and its eight neighbours, longitude wrapping at +-180.
  std::vector<BlockKey> neighborhood(const BlockKey& key) const;

  /// Every satellite whose subpoint may lie within `radius_deg` of `p`:
  /// the blocks overlapping the cap's lat/lon bounding box, plus polar caps
  /// when reached. Stays inside the 3x3 neighbourhood whenever a block is
  /// at least as wide as the cap at that latitude.
  std::vector<SatId> candidates_near(const GeodeticPoint& p, double radius_deg) const;

 private:
  int lat_index(double lat_deg) const;
  int lon_index(double lon_deg) const;
  std::vector<SatId>& cell(int lat_idx, int lon_idx) {
    return cells_[static_cast<std::size_t>(lat_idx) * n_lon_ + lon_idx];
  }
  const std::vector<SatId>& cell(int lat_idx, int lon_idx) const {
    return cells_[static_cast<std::size_t>(lat_idx) * n_lon_ + lon_idx];
  }

  double block_size_;
  double t_;
  int n_lat_;
  int n_lon_;
  double lat_step_;
  double lon_step_;
  std::vector<std::vector<SatId>> cells_;
  std::vector<SatId> north_cap_;
  std::vector<SatId> south_cap_;
  std::size_t count_ = 0;
};

BlockIndex build_block_index(std::span<const SatelliteState> states, double block_size_deg,
                             double t = 0.0);

/// Everything the predictor needs besides the UEs: an ephemeris, the
/// elevation threshold, the weather mask and the block size.
struct PredictionContext {
  const EphemerisSource* ephemeris = nullptr;
  double min_elevation_deg = 40.0;
  AvailabilityMask mask;
  // <= 0: the service-radius angle of the shell at the equator.
  double block_size_deg = 0.0;

  double effective_block_size_deg() const;
  /// Coverage angle of the shell plus slack for trace altitude scatter.
  double search_radius_deg() const;
};

/// Satellite states at one instant with their block index.
class SatelliteSnapshot {
 public:
  SatelliteSnapshot(const PredictionContext& ctx, double t);

  double time() const { return t_; }
  std::span<const SatelliteState> states() const { return states_; }
  const SatelliteState& state(SatId id) const { return states_.at(id); }
  const BlockIndex& index() const { return index_; }

  bool serves(const GeodeticPoint& ue, SatId id) const;
  std::vector<SatelliteState> visible_near(const GeodeticPoint& ue) const;

  /// Access decision for one UE at this instant.
  std::optional<SatId> resolve(const GeodeticPoint& ue, const AccessStrategy& strategy,
                               std::optional<SatId> prev) const;

 private:
  const PredictionContext* ctx_;
  double t_;
  std::vector<SatelliteState> states_;
  BlockIndex index_;
  double radius_deg_;
};

struct PredictionStats {
  std::size_t candidates = 0;  // |U_C|
  std::size_t retained = 0;
};

/// Fast access-satellite prediction: propagate to t', keep consistent UEs
/// whose satellite is still serviceable, and resolve the rest against
/// nearby blocks only.
AccessMap predict_access_map(const AccessMap& current, std::span<const UEState> users,
                             double t_prime, const PredictionContext& ctx,
                             PredictionStats* stats = nullptr);

/// Same, against an already-propagated snapshot at t'.
AccessMap predict_access_map(const AccessMap& current, std::span<const UEState> users,
                             const SatelliteSnapshot& snapshot, PredictionStats* stats = nullptr);

}  // namespace leoho
