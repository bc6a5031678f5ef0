#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "leoho/handover.hpp"
#include "leoho/metrics.hpp"
#include "leoho/orbit.hpp"
#include "leoho/topology.hpp"
#include "leoho/ue.hpp"

namespace leoho {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A batch of UEs scattered uniformly over a disc.
struct UeGroupSpec {
  std::string label;
  std::size_t count = 1;
  GeodeticPoint center;
  double radius_km = 0.0;
  AccessStrategy strategy;
  double speed_mps = 0.0;
  std::optional<double> heading_deg;  // unset: uniform per UE
  bool active = true;
  // Unset: 1 s when active, 600 s otherwise.
  std::optional<double> uplink_period_s;
};

enum class EphemerisErrorModel { None, DailyKmSigma, MinuteCmSigma };

/// Along-track error of the core's ephemeris. `sigma` is in km for the
/// daily model and in cm for the per-minute model.
struct EphemerisError {
  EphemerisErrorModel model = EphemerisErrorModel::None;
  double sigma = 0.0;

  double sigma_km() const;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ConstellationConfig constellation = constellation_preset("starlink");
  std::optional<std::filesystem::path> ephemeris_trace;
  std::vector<GroundStation> ground_stations;
  std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  std::vector<UeGroupSpec> ue_groups;
  double duration_s = 3600.0;
  double delta_t = 5.0;
  double epoch_s = 1.0;
  std::uint64_t seed = 1;
  std::vector<SatId> weather_mask;
  EphemerisError ephemeris_error;
  SchemeParams handover;
  TopologyParams topology;
  int binary_search_iterations = 9;
  bool ping_stall = false;
  bool check_sync_invariants = true;
};

/// Throws ConfigError describing the first problem found.
void validate(const ScenarioConfig& cfg);

/// Parses a JSON scenario. Relative file references resolve against `base_dir`.
ScenarioConfig parse_scenario_json(std::string_view text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario_config(const std::filesystem::path& file);

/// The concrete UEs a config describes, in id order.
std::vector<UEState> generate_ues(const ScenarioConfig& cfg);

struct ScenarioResult {
  MetricsReport report;
  TimingReport timing;
  // Per scheme in config order, per handover event in time order.
  std::vector<HandoverRecord> records;
  std::vector<std::optional<double>> stall_ms;  // parallel to records when ping_stall
  std::vector<std::size_t> ue_group;            // group index of each UE id
};

/// Deterministic epoch loop: propagate, rebuild topology, select access
/// satellites from true geometry, tick the core's table from its own
/// (possibly perturbed, possibly stale) view, execute handovers and
/// aggregate. Throws ConfigError for an invalid config; failures after the
/// start return what was collected with `report.partial` set.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// Writes records.csv, report.json and timing.json into `dir`.
void write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

}  // namespace leoho
