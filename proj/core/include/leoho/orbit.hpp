#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leoho/geo.hpp"

namespace leoho {

using SatId = std::uint32_t;

enum class Direction { Ascending, Descending };

std::string_view to_string(Direction d);

/// One Walker-style orbital shell.
struct ConstellationConfig {
  std::string name;
  double altitude_km = 550.0;
  double inclination_deg = 53.0;
  std::uint32_t num_planes = 1;
  std::uint32_t sats_per_plane = 1;
  std::uint32_t phasing_factor = 0;
  double min_elevation_deg = 40.0;
  double raan_spread_deg = 360.0;

  std::uint32_t total() const { return num_planes * sats_per_plane; }
};

/// Throws std::invalid_argument when the shell parameters are unusable.
void validate(const ConstellationConfig& cfg);

/// Named shells: "starlink" and "kuiper".
ConstellationConfig constellation_preset(std::string_view name);

struct SatelliteState {
  SatId sat_id = 0;
  std::uint32_t plane_index = 0;
  std::uint32_t index_in_plane = 0;
  Vec3 position_ecef_km;
  // Inertial velocity expressed in Earth-fixed axes; its magnitude is the
  // circular orbital speed.
  Vec3 velocity_kms;
  GeodeticPoint subpoint;
  Direction direction = Direction::Ascending;
  // NaN for replayed traces, where no orbital elements exist.
  double arg_latitude_deg = 0.0;
};

/// Ascending iff the satellite is northbound; u = 90 deg resolves to
/// Descending and u = 270 deg to Ascending.
Direction travel_direction(const SatelliteState& state);
Direction direction_from_arg_latitude(double u_deg);

/// Circular-orbit Walker constellation with analytic propagation.
class Constellation {
 public:
  explicit Constellation(ConstellationConfig cfg);

  const ConstellationConfig& config() const { return cfg_; }
  std::size_t size() const { return raan_rad_.size(); }
  bool contains(SatId id) const { return id < size(); }

  double orbit_radius_km() const { return radius_km_; }
  double mean_motion_rad_s() const { return mean_motion_; }
  double period_s() const;
  double orbital_speed_kms() const;

  std::uint32_t plane_of(SatId id) const { return id / cfg_.sats_per_plane; }
  std::uint32_t index_in_plane(SatId id) const { return id % cfg_.sats_per_plane; }
  SatId id_of(std::uint32_t plane, std::uint32_t index) const {
    return plane * cfg_.sats_per_plane + index;
  }

  double raan_deg(SatId id) const;
  double initial_arg_latitude_deg(SatId id) const;

  /// Throws std::out_of_range for an unknown id, std::invalid_argument for t < 0.
  SatelliteState propagate(SatId id, double t) const;
  /// Position before Earth rotation is applied.
  Vec3 inertial_position(SatId id, double t) const;
  std::vector<SatelliteState> propagate_all(double t) const;

 private:
  void check(SatId id, double t) const;

  ConstellationConfig cfg_;
  double radius_km_;
  double mean_motion_;
  double sin_incl_;
  double cos_incl_;
  std::vector<double> raan_rad_;
  std::vector<double> u0_rad_;
};

Constellation build_walker_constellation(const ConstellationConfig& cfg);

/// Ground-range radius within which a satellite clears `min_elevation_deg`.
double coverage_radius_km(double altitude_km, double min_elevation_deg);

/// Same radius as a central angle, degrees.
double coverage_angle_deg(double altitude_km, double min_elevation_deg);

/// Static per-satellite availability (weather). Default: everything available.
class AvailabilityMask {
 public:
  AvailabilityMask() = default;
  explicit AvailabilityMask(std::span<const SatId> unavailable);

  bool available(SatId id) const {
    return id >= blocked_.size() || blocked_[id] == 0;
  }
  void block(SatId id);
  bool empty() const { return count_ == 0; }

 private:
  std::vector<char> blocked_;
  std::size_t count_ = 0;
};

/// Ids (ascending) of satellites whose elevation at `ue` is at least
/// `min_elevation_deg`, after the availability mask.
std::vector<SatId> visible_satellites(const GeodeticPoint& ue,
                                      std::span<const SatelliteState> states,
                                      double min_elevation_deg,
                                      const AvailabilityMask& mask = {});

}  // namespace leoho
