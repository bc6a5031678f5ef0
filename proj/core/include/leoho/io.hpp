#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "leoho/ephemeris.hpp"
#include "leoho/prediction.hpp"
#include "leoho/sync_table.hpp"
#include "leoho/topology.hpp"

namespace leoho {

std::string read_text_file(const std::filesystem::path& file);
/// Creates parent directories as needed.
void write_text_file(const std::filesystem::path& file, std::string_view text);

/// Header `gs_id,lat_deg,lon_deg[,attached_to_core]`; blank lines and `#` comments skipped.
std::vector<GroundStation> parse_ground_stations_csv(std::string_view text);
std::vector<GroundStation> read_ground_stations_csv(const std::filesystem::path& file);

/// Header `sat_id,t_seconds,x_km,y_km,z_km` (Earth-fixed positions).
std::vector<TraceSample> parse_ephemeris_trace_csv(std::string_view text);
std::shared_ptr<const TraceEphemeris> load_ephemeris_trace(const std::filesystem::path& file,
                                                           const ConstellationConfig& layout);

/// Either a full shell description or {"preset": name, ...overrides}.
ConstellationConfig parse_constellation_json(std::string_view text);
ConstellationConfig load_constellation_json(const std::filesystem::path& file);

std::string access_map_json(const AccessMap& map);
std::string sync_table_json(const SyncTable& table);

}  // namespace leoho
