#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leoho/ephemeris.hpp"
#include "leoho/handover.hpp"

namespace leoho {

struct SchemeSummary {
  Scheme scheme = Scheme::Proposed;
  std::size_t count = 0;   // completed handovers
  std::size_t failed = 0;  // no path between the participants
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p99_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  double mean_ue_ran_ms = 0.0;
  double mean_ran_ran_ms = 0.0;
  double mean_ran_core_ms = 0.0;
  double max_ran_ran_ms = 0.0;
  std::size_t abnormal = 0;
  double abnormal_rate = 0.0;
  // (latency, cumulative fraction) at every percent.
  std::vector<std::pair<double, double>> cdf;
  std::optional<double> mean_stall_ms;
};

struct MetricsReport {
  std::string scenario;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  std::size_t num_ues = 0;
  std::size_t handover_events = 0;
  std::size_t service_gaps = 0;
  std::vector<SchemeSummary> schemes;
  std::size_t sync_operations = 0;
  std::size_t sync_invariant_violations = 0;
  // Stationary UEs with two handovers closer than one table update interval.
  std::size_t stationary_rapid_handovers = 0;
  // Epoch samples where the core's downlink route disagreed with the RAN
  // outside a handover's tolerance window.
  std::size_t routing_mismatches = 0;
  std::size_t prediction_updates = 0;
  std::size_t prediction_candidates = 0;
  bool partial = false;
  std::string error;

  const SchemeSummary* find(Scheme s) const;
};

/// Wall-clock measurements, kept apart from the deterministic report.
struct TimingReport {
  std::vector<double> prediction_update_ms;
  double total_wall_s = 0.0;

  double mean_update_ms() const;
  double max_update_ms() const;
};

/// Nearest-rank percentile of an ascending sample, q in [0, 1].
double percentile_sorted(std::span<const double> sorted, double q);
/// Median of an ascending sample (mean of the middle pair for even sizes).
double median_sorted(std::span<const double> sorted);

/// Aggregates the records of one scheme. `stall_ms`, when non-empty, runs
/// parallel to `records`.
SchemeSummary summarize(Scheme scheme, std::span<const HandoverRecord> records,
                        std::span<const std::optional<double>> stall_ms = {});

/// CSV of completed handovers with fixed precision; failed records are left out.
std::string records_csv(std::span<const HandoverRecord> records);
std::string report_json(const MetricsReport& report);
std::string timing_json(const TimingReport& timing);

struct PassStats {
  std::size_t passes = 0;
  double mean_s = 0.0;
  double max_s = 0.0;
};

/// Complete visibility windows (rise and set both observed) of every
/// satellite over `observers` during [0, duration_s], with edges refined by
/// bisection to 1 ms.
PassStats measure_passes(const EphemerisSource& ephemeris, std::span<const GeodeticPoint> observers,
                         double min_elevation_deg, double duration_s, double step_s = 5.0);

}  // namespace leoho
