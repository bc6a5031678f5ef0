#pragma once

#include <memory>
#include <vector>

#include "leoho/orbit.hpp"

namespace leoho {

/// Where satellite positions come from: analytic orbits, a replayed trace,
/// or a perturbed view of either (the core's imperfect ephemeris).
class EphemerisSource {
 public:
  virtual ~EphemerisSource() = default;

  /// Plane/slot layout used for the ISL grid; sat_id = plane * sats_per_plane + slot.
  virtual const ConstellationConfig& layout() const = 0;
  virtual std::size_t size() const = 0;
  virtual SatelliteState state(SatId id, double t) const = 0;
  virtual std::vector<SatelliteState> states_at(double t) const;
};

class AnalyticEphemeris final : public EphemerisSource {
 public:
  explicit AnalyticEphemeris(Constellation constellation)
      : constellation_(std::move(constellation)) {}

  const ConstellationConfig& layout() const override { return constellation_.config(); }
  std::size_t size() const override { return constellation_.size(); }
  SatelliteState state(SatId id, double t) const override {
    return constellation_.propagate(id, t);
  }
  std::vector<SatelliteState> states_at(double t) const override {
    return constellation_.propagate_all(t);
  }
  const Constellation& constellation() const { return constellation_; }

 private:
  Constellation constellation_;
};

struct TraceSample {
  SatId sat_id = 0;
  double t_s = 0.0;
  Vec3 position_ecef_km;
};

/// Time-stamped Earth-fixed positions, linearly interpolated between samples.
/// Querying outside a satellite's sampled span throws std::out_of_range.
class TraceEphemeris final : public EphemerisSource {
 public:
  TraceEphemeris(ConstellationConfig layout, std::vector<TraceSample> samples);

  const ConstellationConfig& layout() const override { return layout_; }
  std::size_t size() const override { return tracks_.size(); }
  SatelliteState state(SatId id, double t) const override;

 private:
  struct Point {
    double t;
    Vec3 p;
  };
  ConstellationConfig layout_;
  std::vector<std::vector<Point>> tracks_;
};

/// Shifts every satellite along its track by a fixed per-satellite offset.
class PerturbedEphemeris final : public EphemerisSource {
 public:
  PerturbedEphemeris(std::shared_ptr<const EphemerisSource> base,
                     std::vector<double> along_track_offset_km);

  const ConstellationConfig& layout() const override { return base_->layout(); }
  std::size_t size() const override { return base_->size(); }
  SatelliteState state(SatId id, double t) const override;
  std::vector<SatelliteState> states_at(double t) const override;

 private:
  SatelliteState shift(SatelliteState s) const;

  std::shared_ptr<const EphemerisSource> base_;
  std::vector<double> offset_km_;
};

}  // namespace leoho
