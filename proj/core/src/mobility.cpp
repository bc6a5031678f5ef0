#include "leoho/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leoho {

GeodeticPoint great_circle_destination(const GeodeticPoint& start, double heading_deg,
                                       double distance_km, double* final_heading_deg) {
  const double delta = distance_km / kEarthRadiusKm;
  const double theta = deg2rad(heading_deg);
  const double lat1 = deg2rad(start.lat_deg);
  const double lon1 = deg2rad(start.lon_deg);

  const double sin_lat2 =
      std::sin(lat1) * std::cos(delta) + std::cos(lat1) * std::sin(delta) * std::cos(theta);
  const double lat2 = std::asin(std::clamp(sin_lat2, -1.0, 1.0));
  const double lon2 = lon1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                                        std::cos(delta) - std::sin(lat1) * sin_lat2);

  GeodeticPoint out;
  out.lat_deg = rad2deg(lat2);
  out.lon_deg = normalize_lon_deg(rad2deg(lon2));
  out.alt_km = start.alt_km;

  if (final_heading_deg) {
    // Reverse bearing from the destination back to the start, flipped.
    const double dlon = lon1 - lon2;
    const double y = std::sin(dlon) * std::cos(lat1);
    const double x = std::cos(lat2) * std::sin(lat1) - std::sin(lat2) * std::cos(lat1) * std::cos(dlon);
    double back = rad2deg(std::atan2(y, x));
    double h = std::fmod(back + 180.0, 360.0);
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    *final_heading_deg = h;
  }
  return out;
}

UEState step_mobility(const UEState& ue, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("mobility step needs dt > 0");
  if (!ue.mobility.moving()) return ue;
  UEState next = ue;
  double heading = ue.mobility.heading_deg;
  next.position = great_circle_destination(ue.position, ue.mobility.heading_deg,
                                           ue.mobility.speed_mps * dt / 1000.0, &heading);
  next.mobility.heading_deg = heading;
  return next;
}

}  // namespace leoho
