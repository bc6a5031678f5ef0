#pragma once

#include "leoho/ue.hpp"

namespace leoho {

/// Advances a UE along its great circle by speed * dt. The heading is
/// updated to the bearing at the new point so repeated steps stay on the
/// same great circle. Throws std::invalid_argument when dt <= 0.
UEState step_mobility(const UEState& ue, double dt);

/// Point reached by travelling `distance_km` from `start` on bearing
/// `heading_deg`; `final_heading_deg` receives the arrival bearing.
GeodeticPoint great_circle_destination(const GeodeticPoint& start, double heading_deg,
                                       double distance_km, double* final_heading_deg = nullptr);

}  // namespace leoho
