#include "leoho/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace leoho {

std::string_view to_string(Direction d) {
  return d == Direction::Ascending ? "Ascending" : "Descending";
}

void validate(const ConstellationConfig& cfg) {
  if (cfg.num_planes == 0) throw std::invalid_argument("num_planes must be >= 1");
  if (cfg.sats_per_plane == 0) throw std::invalid_argument("sats_per_plane must be >= 1");
  if (!(cfg.altitude_km > 0.0)) throw std::invalid_argument("altitude_km must be > 0");
  if (!(cfg.inclination_deg >= 0.0 && cfg.inclination_deg <= 180.0)) {
    throw std::invalid_argument("inclination_deg must lie in [0, 180]");
  }
  if (!(cfg.min_elevation_deg >= 0.0 && cfg.min_elevation_deg < 90.0)) {
    throw std::invalid_argument("min_elevation_deg must lie in [0, 90)");
  }
  if (!(cfg.raan_spread_deg > 0.0 && cfg.raan_spread_deg <= 360.0)) {
    throw std::invalid_argument("raan_spread_deg must lie in (0, 360]");
  }
}

ConstellationConfig constellation_preset(std::string_view name) {
  ConstellationConfig cfg;
  if (name == "starlink") {
    cfg.name = "starlink";
    cfg.altitude_km = 550.0;
    cfg.inclination_deg = 53.0;
    cfg.num_planes = 72;
    cfg.sats_per_plane = 22;
    // Multiple of sats_per_plane: keeps the wrap-around plane pair aligned.
    cfg.phasing_factor = 22;
    cfg.min_elevation_deg = 40.0;
    return cfg;
  }
  if (name == "kuiper") {
    cfg.name = "kuiper";
    cfg.altitude_km = 630.0;
    cfg.inclination_deg = 51.9;
    cfg.num_planes = 34;
    cfg.sats_per_plane = 34;
    cfg.phasing_factor = 0;
    cfg.min_elevation_deg = 35.0;
    return cfg;
  }
  throw std::invalid_argument("unknown constellation preset: " + std::string(name));
}

Direction direction_from_arg_latitude(double u_deg) {
  double u = std::fmod(u_deg, 360.0);
  if (u < 0.0) u += 360.0;
  // Northbound on [270, 360) and [0, 90).
  return (u >= 270.0 || u < 90.0) ? Direction::Ascending : Direction::Descending;
}

Direction travel_direction(const SatelliteState& state) {
  if (std::isfinite(state.arg_latitude_deg)) {
    return direction_from_arg_latitude(state.arg_latitude_deg);
  }
  // Trace replay: sign of the local north component of velocity.
  const Vec3& p = state.position_ecef_km;
  const double r = p.norm();
  const double rho2 = p.x * p.x + p.y * p.y;
  if (r == 0.0 || rho2 == 0.0) {
    return state.velocity_kms.z >= 0.0 ? Direction::Ascending : Direction::Descending;
  }
  const Vec3 north{-p.z * p.x / (r * std::sqrt(rho2)), -p.z * p.y / (r * std::sqrt(rho2)),
                   std::sqrt(rho2) / r};
  return state.velocity_kms.dot(north) > 0.0 ? Direction::Ascending : Direction::Descending;
}

Constellation::Constellation(ConstellationConfig cfg) : cfg_(std::move(cfg)) {
  validate(cfg_);
  radius_km_ = kEarthRadiusKm + cfg_.altitude_km;
  mean_motion_ = std::sqrt(kMuKm3PerS2 / (radius_km_ * radius_km_ * radius_km_));
  sin_incl_ = std::sin(deg2rad(cfg_.inclination_deg));
  cos_incl_ = std::cos(deg2rad(cfg_.inclination_deg));

  const std::uint32_t planes = cfg_.num_planes;
  const std::uint32_t per_plane = cfg_.sats_per_plane;
  const double total = static_cast<double>(planes) * per_plane;
  raan_rad_.reserve(cfg_.total());
  u0_rad_.reserve(cfg_.total());
  for (std::uint32_t p = 0; p < planes; ++p) {
    const double raan_deg = p * cfg_.raan_spread_deg / planes;
    for (std::uint32_t k = 0; k < per_plane; ++k) {
      const double u0_deg = k * 360.0 / per_plane + p * cfg_.phasing_factor * 360.0 / total;
      raan_rad_.push_back(deg2rad(raan_deg));
      u0_rad_.push_back(deg2rad(u0_deg));
    }
  }
}

double Constellation::period_s() const { return 2.0 * std::numbers::pi / mean_motion_; }

double Constellation::orbital_speed_kms() const { return std::sqrt(kMuKm3PerS2 / radius_km_); }

double Constellation::raan_deg(SatId id) const {
  check(id, 0.0);
  return rad2deg(raan_rad_[id]);
}

double Constellation::initial_arg_latitude_deg(SatId id) const {
  check(id, 0.0);
  return rad2deg(u0_rad_[id]);
}

void Constellation::check(SatId id, double t) const {
  if (id >= size()) throw std::out_of_range("unknown satellite id " + std::to_string(id));
  if (!(t >= 0.0)) throw std::invalid_argument("propagation time must be >= 0");
}

Vec3 Constellation::inertial_position(SatId id, double t) const {
  check(id, t);
  const double u = u0_rad_[id] + mean_motion_ * t;
  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan_rad_[id]), so = std::sin(raan_rad_[id]);
  return {radius_km_ * (co * cu - so * su * cos_incl_),
          radius_km_ * (so * cu + co * su * cos_incl_),
          radius_km_ * (su * sin_incl_)};
}

SatelliteState Constellation::propagate(SatId id, double t) const {
  check(id, t);
  const double u = u0_rad_[id] + mean_motion_ * t;
  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan_rad_[id]), so = std::sin(raan_rad_[id]);
  const Vec3 pos{radius_km_ * (co * cu - so * su * cos_incl_),
                 radius_km_ * (so * cu + co * su * cos_incl_), radius_km_ * (su * sin_incl_)};
  const double v = radius_km_ * mean_motion_;
  const Vec3 vel{v * (-co * su - so * cu * cos_incl_), v * (-so * su + co * cu * cos_incl_),
                 v * (cu * sin_incl_)};

  // Inertial -> Earth-fixed: rotate about z by -omega_e * t.
  const double theta = kEarthRotationRadPerS * t;
  const double ct = std::cos(theta), st = std::sin(theta);
  auto rotate = [&](const Vec3& a) {
    return Vec3{ct * a.x + st * a.y, -st * a.x + ct * a.y, a.z};
  };

  SatelliteState s;
  s.sat_id = id;
  s.plane_index = plane_of(id);
  s.index_in_plane = index_in_plane(id);
  s.position_ecef_km = rotate(pos);
  s.velocity_kms = rotate(vel);
  s.subpoint = to_geodetic(s.position_ecef_km);
  double u_deg = std::fmod(rad2deg(u), 360.0);
  if (u_deg < 0.0) u_deg += 360.0;
  s.arg_latitude_deg = u_deg;
  s.direction = direction_from_arg_latitude(u_deg);
  return s;
}

std::vector<SatelliteState> Constellation::propagate_all(double t) const {
  std::vector<SatelliteState> out;
  out.reserve(size());
  for (SatId id = 0; id < size(); ++id) out.push_back(propagate(id, t));
  return out;
}

Constellation build_walker_constellation(const ConstellationConfig& cfg) {
  return Constellation(cfg);
}

double coverage_angle_deg(double altitude_km, double min_elevation_deg) {
  if (!(altitude_km > 0.0)) throw std::invalid_argument("altitude_km must be > 0");
  if (!(min_elevation_deg >= 0.0 && min_elevation_deg <= 90.0)) {
    throw std::invalid_argument("min_elevation_deg must lie in [0, 90]");
  }
  const double eps = deg2rad(min_elevation_deg);
  const double ratio = kEarthRadiusKm / (kEarthRadiusKm + altitude_km);
  const double angle = std::acos(std::clamp(ratio * std::cos(eps), -1.0, 1.0)) - eps;
  return rad2deg(std::max(0.0, angle));
}

double coverage_radius_km(double altitude_km, double min_elevation_deg) {
  return kEarthRadiusKm * deg2rad(coverage_angle_deg(altitude_km, min_elevation_deg));
}

AvailabilityMask::AvailabilityMask(std::span<const SatId> unavailable) {
  for (SatId id : unavailable) block(id);
}

void AvailabilityMask::block(SatId id) {
  if (id >= blocked_.size()) blocked_.resize(static_cast<std::size_t>(id) + 1, 0);
  if (blocked_[id] == 0) {
    blocked_[id] = 1;
    ++count_;
  }
}

std::vector<SatId> visible_satellites(const GeodeticPoint& ue,
                                      std::span<const SatelliteState> states,
                                      double min_elevation_deg, const AvailabilityMask& mask) {
  const Vec3 obs = to_ecef(ue);
  std::vector<SatId> out;
  for (const auto& s : states) {
    if (!mask.available(s.sat_id)) continue;
    if (elevation_deg(obs, s.position_ecef_km) >= min_elevation_deg) out.push_back(s.sat_id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace leoho
