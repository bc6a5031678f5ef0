#pragma once

#include <cmath>
#include <numbers>

namespace leoho {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kMuKm3PerS2 = 398600.4418;
inline constexpr double kEarthRotationRadPerS = 7.2921159e-5;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return n > 0.0 ? *this * (1.0 / n) : Vec3{};
  }
  constexpr bool operator==(const Vec3&) const = default;
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Spherical-Earth geodetic coordinates. Longitude lives in [-180, 180).
struct GeodeticPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
  double alt_km = 0.0;

  bool operator==(const GeodeticPoint&) const = default;
};

/// Wraps any longitude into the half-open interval [-180, 180).
double normalize_lon_deg(double lon_deg);

/// Throws std::invalid_argument when lat/lon/alt are out of range or non-finite.
void validate(const GeodeticPoint& p);

Vec3 to_ecef(const GeodeticPoint& p);
GeodeticPoint to_geodetic(const Vec3& ecef_km);

/// Elevation angle (degrees) of `target` seen from an observer on the sphere.
double elevation_deg(const Vec3& observer_ecef_km, const Vec3& target_ecef_km);

/// Great-circle central angle between two points, radians.
double central_angle_rad(const GeodeticPoint& a, const GeodeticPoint& b);

/// Surface distance along the great circle at Earth radius.
double great_circle_km(const GeodeticPoint& a, const GeodeticPoint& b);

}  // namespace leoho
