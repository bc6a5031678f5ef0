#include "leoho/ephemeris.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace leoho {

std::vector<SatelliteState> EphemerisSource::states_at(double t) const {
  std::vector<SatelliteState> out;
  out.reserve(size());
  for (SatId id = 0; id < size(); ++id) out.push_back(state(id, t));
  return out;
}

TraceEphemeris::TraceEphemeris(ConstellationConfig layout, std::vector<TraceSample> samples)
    : layout_(std::move(layout)) {
  validate(layout_);
  tracks_.resize(layout_.total());
  for (const auto& s : samples) {
    if (s.sat_id >= tracks_.size()) {
      throw std::invalid_argument("trace sat_id " + std::to_string(s.sat_id) +
                                  " outside the constellation layout");
    }
    tracks_[s.sat_id].push_back({s.t_s, s.position_ecef_km});
  }
  for (SatId id = 0; id < tracks_.size(); ++id) {
    auto& track = tracks_[id];
    if (track.empty()) {
      throw std::invalid_argument("trace has no samples for sat_id " + std::to_string(id));
    }
    std::sort(track.begin(), track.end(), [](const Point& a, const Point& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < track.size(); ++i) {
      if (track[i].t == track[i - 1].t) {
        throw std::invalid_argument("duplicate trace timestamp for sat_id " + std::to_string(id));
      }
    }
  }
}

SatelliteState TraceEphemeris::state(SatId id, double t) const {
  if (id >= tracks_.size()) throw std::out_of_range("unknown satellite id " + std::to_string(id));
  const auto& track = tracks_[id];
  if (t < track.front().t || t > track.back().t) {
    throw std::out_of_range("time " + std::to_string(t) + " outside trace span for sat_id " +
                            std::to_string(id));
  }
  SatelliteState s;
  s.sat_id = id;
  s.plane_index = id / layout_.sats_per_plane;
  s.index_in_plane = id % layout_.sats_per_plane;
  s.arg_latitude_deg = std::numeric_limits<double>::quiet_NaN();
  if (track.size() == 1) {
    s.position_ecef_km = track.front().p;
  } else {
    auto hi = std::upper_bound(track.begin(), track.end(), t,
                               [](double v, const Point& p) { return v < p.t; });
    if (hi == track.end()) --hi;
    if (hi == track.begin()) ++hi;
    const auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    s.position_ecef_km = lo->p + (hi->p - lo->p) * w;
    s.velocity_kms = (hi->p - lo->p) * (1.0 / (hi->t - lo->t));
  }
  s.subpoint = to_geodetic(s.position_ecef_km);
  s.direction = travel_direction(s);
  return s;
}

PerturbedEphemeris::PerturbedEphemeris(std::shared_ptr<const EphemerisSource> base,
                                       std::vector<double> along_track_offset_km)
    : base_(std::move(base)), offset_km_(std::move(along_track_offset_km)) {
  if (!base_) throw std::invalid_argument("perturbed ephemeris needs a base source");
  offset_km_.resize(base_->size(), 0.0);
}

SatelliteState PerturbedEphemeris::shift(SatelliteState s) const {
  const double off = offset_km_[s.sat_id];
  if (off == 0.0) return s;
  const Vec3 p = s.position_ecef_km;
  const double r = p.norm();
  const double speed = s.velocity_kms.norm();
  if (r == 0.0 || speed == 0.0) return s;
  // Rotate within the instantaneous orbital plane by the along-track angle.
  const double delta = off / r;
  const Vec3 along = s.velocity_kms * (1.0 / speed);
  const Vec3 radial = p * (1.0 / r);
  s.position_ecef_km = p * std::cos(delta) + along * (r * std::sin(delta));
  s.velocity_kms = s.velocity_kms * std::cos(delta) - radial * (speed * std::sin(delta));
  s.subpoint = to_geodetic(s.position_ecef_km);
  if (std::isfinite(s.arg_latitude_deg)) {
    double u = std::fmod(s.arg_latitude_deg + rad2deg(delta), 360.0);
    if (u < 0.0) u += 360.0;
    s.arg_latitude_deg = u;
  }
  s.direction = travel_direction(s);
  return s;
}

SatelliteState PerturbedEphemeris::state(SatId id, double t) const {
  return shift(base_->state(id, t));
}

std::vector<SatelliteState> PerturbedEphemeris::states_at(double t) const {
  auto states = base_->states_at(t);
  for (auto& s : states) s = shift(s);
  return states;
}

}  // namespace leoho
