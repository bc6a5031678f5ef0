#include "leoho/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace leoho {

using nlohmann::ordered_json;

const SchemeSummary* MetricsReport::find(Scheme s) const {
  for (const auto& summary : schemes) {
    if (summary.scheme == s) return &summary;
  }
  return nullptr;
}

double TimingReport::mean_update_ms() const {
  if (prediction_update_ms.empty()) return 0.0;
  return std::accumulate(prediction_update_ms.begin(), prediction_update_ms.end(), 0.0) /
         static_cast<double>(prediction_update_ms.size());
}

double TimingReport::max_update_ms() const {
  if (prediction_update_ms.empty()) return 0.0;
  return *std::max_element(prediction_update_ms.begin(), prediction_update_ms.end());
}

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  q = std::clamp(q, 0.0, 1.0);
  const auto n = static_cast<double>(sorted.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(q * n));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

double median_sorted(std::span<const double> sorted) {
  if (sorted.empty()) return 0.0;
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

SchemeSummary summarize(Scheme scheme, std::span<const HandoverRecord> records,
                        std::span<const std::optional<double>> stall_ms) {
  if (!stall_ms.empty() && stall_ms.size() != records.size()) {
    throw std::invalid_argument("stall samples must run parallel to records");
  }
  SchemeSummary out;
  out.scheme = scheme;
  std::vector<double> lat;
  double ue_ran = 0.0, ran_ran = 0.0, ran_core = 0.0, stall = 0.0;
  std::size_t stall_n = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.scheme != scheme) continue;
    if (r.failed) {
      ++out.failed;
      continue;
    }
    lat.push_back(r.latency_ms);
    ue_ran += r.breakdown.ue_ran_ms;
    ran_ran += r.breakdown.ran_ran_ms;
    ran_core += r.breakdown.ran_core_ms;
    out.max_ran_ran_ms = std::max(out.max_ran_ran_ms, r.breakdown.ran_ran_ms);
    if (r.abnormal) ++out.abnormal;
    if (!stall_ms.empty() && stall_ms[i]) {
      stall += *stall_ms[i];
      ++stall_n;
    }
  }
  out.count = lat.size();
  if (stall_n > 0) out.mean_stall_ms = stall / static_cast<double>(stall_n);
  if (lat.empty()) return out;

  const auto n = static_cast<double>(lat.size());
  out.mean_ms = std::accumulate(lat.begin(), lat.end(), 0.0) / n;
  out.mean_ue_ran_ms = ue_ran / n;
  out.mean_ran_ran_ms = ran_ran / n;
  out.mean_ran_core_ms = ran_core / n;
  out.abnormal_rate = static_cast<double>(out.abnormal) / n;
  std::sort(lat.begin(), lat.end());
  out.min_ms = lat.front();
  out.max_ms = lat.back();
  out.median_ms = median_sorted(lat);
  out.p99_ms = percentile_sorted(lat, 0.99);
  for (int pct = 0; pct <= 100; ++pct) {
    const double q = pct / 100.0;
    out.cdf.emplace_back(percentile_sorted(lat, q), q);
  }
  return out;
}

std::string records_csv(std::span<const HandoverRecord> records) {
  std::string out = "scheme,ue,src,dst,t,latency_ms,ue_ran_ms,ran_ran_ms,ran_core_ms,abnormal\n";
  char line[256];
  for (const auto& r : records) {
    if (r.failed) continue;
    std::snprintf(line, sizeof line, "%s,%u,%u,%u,%.6f,%.6f,%.6f,%.6f,%.6f,%d\n",
                  std::string(to_string(r.scheme)).c_str(), r.ue_id, r.source_sat, r.target_sat,
                  r.t_trigger, r.latency_ms, r.breakdown.ue_ran_ms, r.breakdown.ran_ran_ms,
                  r.breakdown.ran_core_ms, r.abnormal ? 1 : 0);
    out += line;
  }
  return out;
}

std::string report_json(const MetricsReport& report) {
  ordered_json j;
  j["scenario"] = report.scenario;
  j["seed"] = report.seed;
  j["duration_s"] = report.duration_s;
  j["num_ues"] = report.num_ues;
  j["handover_events"] = report.handover_events;
  j["service_gaps"] = report.service_gaps;
  j["partial"] = report.partial;
  if (!report.error.empty()) j["error"] = report.error;
  j["sync"] = {{"operations", report.sync_operations},
               {"invariant_violations", report.sync_invariant_violations},
               {"stationary_rapid_handovers", report.stationary_rapid_handovers},
               {"routing_mismatches", report.routing_mismatches},
               {"prediction_updates", report.prediction_updates},
               {"prediction_candidates", report.prediction_candidates}};
  ordered_json schemes = ordered_json::array();
  for (const auto& s : report.schemes) {
    ordered_json o;
    o["scheme"] = std::string(to_string(s.scheme));
    o["handovers"] = s.count;
    o["failed"] = s.failed;
    o["mean_ms"] = s.mean_ms;
    o["median_ms"] = s.median_ms;
    o["p99_ms"] = s.p99_ms;
    o["min_ms"] = s.min_ms;
    o["max_ms"] = s.max_ms;
    o["mean_ue_ran_ms"] = s.mean_ue_ran_ms;
    o["mean_ran_ran_ms"] = s.mean_ran_ran_ms;
    o["mean_ran_core_ms"] = s.mean_ran_core_ms;
    o["max_ran_ran_ms"] = s.max_ran_ran_ms;
    o["abnormal"] = s.abnormal;
    o["abnormal_rate"] = s.abnormal_rate;
    if (s.mean_stall_ms) o["mean_stall_ms"] = *s.mean_stall_ms;
    ordered_json cdf = ordered_json::array();
    for (const auto& [v, q] : s.cdf) cdf.push_back({v, q});
    o["cdf"] = std::move(cdf);
    schemes.push_back(std::move(o));
  }
  j["schemes"] = std::move(schemes);
  return j.dump(2) + "\n";
}

std::string timing_json(const TimingReport& timing) {
  ordered_json j;
  j["total_wall_s"] = timing.total_wall_s;
  j["prediction_updates"] = timing.prediction_update_ms.size();
  j["mean_update_ms"] = timing.mean_update_ms();
  j["max_update_ms"] = timing.max_update_ms();
  return j.dump(2) + "\n";
}

PassStats measure_passes(const EphemerisSource& ephemeris, std::span<const GeodeticPoint> observers,
                         double min_elevation_deg, double duration_s, double step_s) {
  if (!(step_s > 0.0) || !(duration_s > step_s)) {
    throw std::invalid_argument("pass measurement needs 0 < step < duration");
  }
  const std::size_t nsat = ephemeris.size();
  std::vector<Vec3> obs;
  for (const auto& p : observers) obs.push_back(to_ecef(p));

  auto up = [&](std::size_t o, SatId id, double t) {
    return elevation_deg(obs[o], ephemeris.state(id, t).position_ecef_km) >= min_elevation_deg;
  };
  // Edge between a non-visible sample at a and a visible one at b (or the reverse).
  auto refine = [&](std::size_t o, SatId id, double a, double b) {
    const bool at_a = up(o, id, a);
    while (b - a > 1e-3) {
      const double m = 0.5 * (a + b);
      (up(o, id, m) == at_a ? a : b) = m;
    }
    return 0.5 * (a + b);
  };

  std::vector<char> visible(obs.size() * nsat, 0);
  std::vector<double> rise(obs.size() * nsat, -1.0);
  PassStats out;
  double total = 0.0;
  const auto steps = static_cast<std::size_t>(std::floor(duration_s / step_s));
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * step_s;
    const auto states = ephemeris.states_at(t);
    for (std::size_t o = 0; o < obs.size(); ++o) {
      for (SatId id = 0; id < nsat; ++id) {
        const bool v = elevation_deg(obs[o], states[id].position_ecef_km) >= min_elevation_deg;
        const std::size_t cell = o * nsat + id;
        if (v == static_cast<bool>(visible[cell])) continue;
        visible[cell] = v;
        if (k == 0) continue;
        const double edge = refine(o, id, t - step_s, t);
        if (v) {
          rise[cell] = edge;
        } else if (rise[cell] >= 0.0) {
          const double d = edge - rise[cell];
          total += d;
          out.max_s = std::max(out.max_s, d);
          ++out.passes;
          rise[cell] = -1.0;
        }
      }
    }
  }
  if (out.passes > 0) out.mean_s = total / static_cast<double>(out.passes);
  return out;
}

}  // namespace leoho
