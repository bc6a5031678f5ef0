#include "leoho/geo.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace leoho {

double normalize_lon_deg(double lon_deg) {
  double lon = std::fmod(lon_deg + 180.0, 360.0);
  if (lon < 0.0) lon += 360.0;
  lon -= 180.0;
  // fmod can land exactly on +180 after the shift for tiny negatives.
  if (lon >= 180.0) lon -= 360.0;
  return lon;
}

void validate(const GeodeticPoint& p) {
  if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg) || !std::isfinite(p.alt_km)) {
    throw std::invalid_argument("geodetic point has non-finite coordinates");
  }
  if (p.lat_deg < -90.0 || p.lat_deg > 90.0) {
    throw std::invalid_argument("latitude out of range: " + std::to_string(p.lat_deg));
  }
  if (p.lon_deg < -180.0 || p.lon_deg >= 180.0) {
    throw std::invalid_argument("longitude out of range: " + std::to_string(p.lon_deg));
  }
  if (p.alt_km < 0.0) {
    throw std::invalid_argument("altitude must be non-negative");
  }
}

Vec3 to_ecef(const GeodeticPoint& p) {
  const double r = kEarthRadiusKm + p.alt_km;
  const double lat = deg2rad(p.lat_deg);
  const double lon = deg2rad(p.lon_deg);
  return {r * std::cos(lat) * std::cos(lon), r * std::cos(lat) * std::sin(lon), r * std::sin(lat)};
}

GeodeticPoint to_geodetic(const Vec3& ecef_km) {
  const double r = ecef_km.norm();
  GeodeticPoint g;
  if (r == 0.0) return g;
  g.lat_deg = rad2deg(std::asin(std::clamp(ecef_km.z / r, -1.0, 1.0)));
  g.lon_deg = normalize_lon_deg(rad2deg(std::atan2(ecef_km.y, ecef_km.x)));
  g.alt_km = std::max(0.0, r - kEarthRadiusKm);
  return g;
}

double elevation_deg(const Vec3& observer_ecef_km, const Vec3& target_ecef_km) {
  const Vec3 los = target_ecef_km - observer_ecef_km;
  const double range = los.norm();
  if (range == 0.0) return 90.0;
  const Vec3 up = observer_ecef_km.normalized();
  return rad2deg(std::asin(std::clamp(los.dot(up) / range, -1.0, 1.0)));
}

double central_angle_rad(const GeodeticPoint& a, const GeodeticPoint& b) {
  // Haversine form stays accurate for small separations.
  const double lat1 = deg2rad(a.lat_deg);
  const double lat2 = deg2rad(b.lat_deg);
  const double dlat = lat2 - lat1;
  const double dlon = deg2rad(b.lon_deg - a.lon_deg);
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

double great_circle_km(const GeodeticPoint& a, const GeodeticPoint& b) {
  return kEarthRadiusKm * central_angle_rad(a, b);
}

}  // namespace leoho
