#pragma once

#include <cstdint>
#include <string_view>

#include "leoho/geo.hpp"

namespace leoho {

using UeId = std::uint32_t;

enum class StrategyKind { Consistent, Flexible };

std::string_view to_string(StrategyKind k);
/// "consistent" or "flexible" (case-insensitive).
StrategyKind parse_strategy(std::string_view text);

struct AccessStrategy {
  StrategyKind kind = StrategyKind::Flexible;
  bool direction_constrained = true;

  bool operator==(const AccessStrategy&) const = default;
};

enum class MobilityKind { Stationary, GreatCircle };

struct Mobility {
  MobilityKind kind = MobilityKind::Stationary;
  double speed_mps = 0.0;
  double heading_deg = 0.0;

  static Mobility stationary() { return {}; }
  static Mobility great_circle(double speed_mps, double heading_deg) {
    return {MobilityKind::GreatCircle, speed_mps, heading_deg};
  }
  bool moving() const { return kind == MobilityKind::GreatCircle && speed_mps > 0.0; }
};

struct UEState {
  UeId ue_id = 0;
  GeodeticPoint position;
  Mobility mobility;
  AccessStrategy strategy;
  bool active = true;
  // Seconds between location-bearing uplinks; 0 means the UE never reports.
  double uplink_period_s = 1.0;
};

/// Throws std::invalid_argument for negative speed or a heading outside [0, 360).
void validate(const UEState& ue);

}  // namespace leoho
