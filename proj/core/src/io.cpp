#include "leoho/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json_support.hpp"

namespace leoho {

namespace {

using nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> data_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t pos = 0, no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
    ++no;
    if (!line.empty() && line.front() != '#') out.emplace_back(no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

double to_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw std::invalid_argument("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

bool to_bool(std::string_view s, std::size_t line) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no" || s.empty()) return false;
  throw std::invalid_argument("line " + std::to_string(line) + ": bad flag '" + std::string(s) + "'");
}

std::size_t column(const std::vector<std::string_view>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument("CSV header lacks column '" + std::string(name) + "'");
}

ordered_json opt_sat(const std::optional<SatId>& s) {
  return s ? ordered_json(*s) : ordered_json(nullptr);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

std::vector<GroundStation> parse_ground_stations_csv(std::string_view text) {
  const auto lines = data_lines(text);
  if (lines.empty()) throw std::invalid_argument("ground station CSV is empty");
  const auto header = split(lines.front().second);
  const auto c_id = column(header, "gs_id");
  const auto c_lat = column(header, "lat_deg");
  const auto c_lon = column(header, "lon_deg");
  std::optional<std::size_t> c_core;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "attached_to_core") c_core = i;
  }

  std::vector<GroundStation> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [no, line] = lines[i];
    const auto f = split(line);
    if (f.size() != header.size()) {
      throw std::invalid_argument("line " + std::to_string(no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    }
    GroundStation gs;
    gs.gs_id = std::string(f[c_id]);
    gs.location.lat_deg = to_double(f[c_lat], no);
    gs.location.lon_deg = to_double(f[c_lon], no);
    validate(gs.location);
    if (c_core) gs.attached_to_core = to_bool(f[*c_core], no);
    for (const auto& other : out) {
      if (other.gs_id == gs.gs_id) throw std::invalid_argument("duplicate ground station " + gs.gs_id);
    }
    out.push_back(std::move(gs));
  }
  return out;
}

std::vector<GroundStation> read_ground_stations_csv(const std::filesystem::path& file) {
  return parse_ground_stations_csv(read_text_file(file));
}

std::vector<TraceSample> parse_ephemeris_trace_csv(std::string_view text) {
  const auto lines = data_lines(text);
  if (lines.empty()) throw std::invalid_argument("ephemeris trace is empty");
  const auto header = split(lines.front().second);
  const auto c_id = column(header, "sat_id");
  const auto c_t = column(header, "t_seconds");
  const auto c_x = column(header, "x_km");
  const auto c_y = column(header, "y_km");
  const auto c_z = column(header, "z_km");

  std::vector<TraceSample> out;
  out.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [no, line] = lines[i];
    const auto f = split(line);
    if (f.size() != header.size()) {
      throw std::invalid_argument("line " + std::to_string(no) + ": wrong field count");
    }
    const double id = to_double(f[c_id], no);
    if (id < 0 || id != std::floor(id)) {
      throw std::invalid_argument("line " + std::to_string(no) + ": bad satellite id");
    }
    out.push_back({static_cast<SatId>(id), to_double(f[c_t], no),
                   {to_double(f[c_x], no), to_double(f[c_y], no), to_double(f[c_z], no)}});
  }
  return out;
}

std::shared_ptr<const TraceEphemeris> load_ephemeris_trace(const std::filesystem::path& file,
                                                           const ConstellationConfig& layout) {
  return std::make_shared<const TraceEphemeris>(layout,
                                                parse_ephemeris_trace_csv(read_text_file(file)));
}

namespace detail {

ConstellationConfig constellation_from_json(const json& j) {
  if (j.is_string()) return constellation_preset(j.get<std::string>());
  if (!j.is_object()) throw std::invalid_argument("constellation must be a preset name or object");
  ConstellationConfig c;
  if (j.contains("preset")) c = constellation_preset(j.at("preset").get<std::string>());
  c.name = get_or<std::string>(j, "name", c.name);
  c.altitude_km = get_or(j, "altitude_km", c.altitude_km);
  c.inclination_deg = get_or(j, "inclination_deg", c.inclination_deg);
  c.num_planes = get_or(j, "num_planes", c.num_planes);
  c.sats_per_plane = get_or(j, "sats_per_plane", c.sats_per_plane);
  c.phasing_factor = get_or(j, "phasing_factor", c.phasing_factor);
  c.min_elevation_deg = get_or(j, "min_elevation_deg", c.min_elevation_deg);
  c.raan_spread_deg = get_or(j, "raan_spread_deg", c.raan_spread_deg);
  validate(c);
  return c;
}

}  // namespace detail

ConstellationConfig parse_constellation_json(std::string_view text) {
  try {
    return detail::constellation_from_json(detail::json::parse(text));
  } catch (const detail::json::exception& e) {
    throw std::invalid_argument(std::string("constellation JSON: ") + e.what());
  }
}

ConstellationConfig load_constellation_json(const std::filesystem::path& file) {
  return parse_constellation_json(read_text_file(file));
}

std::string access_map_json(const AccessMap& map) {
  ordered_json j;
  j["t"] = map.t;
  ordered_json rows = ordered_json::array();
  for (const auto& [ue, sat] : map.access) rows.push_back({{"ue", ue}, {"sat", opt_sat(sat)}});
  j["access"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string sync_table_json(const SyncTable& table) {
  ordered_json j;
  j["T"] = table.T;
  j["delta_t"] = table.delta_t;
  ordered_json rows = ordered_json::array();
  for (const auto& [id, row] : table.rows) {
    rows.push_back({{"ue", id},
                    {"lat_deg", row.user.position.lat_deg},
                    {"lon_deg", row.user.position.lon_deg},
                    {"strategy", std::string(to_string(row.user.strategy.kind))},
                    {"access_sat", opt_sat(row.access_sat)},
                    {"next_access_sat", opt_sat(row.next_access_sat)},
                    {"t_p", row.t_p},
                    {"tunnel_ref", row.tunnel_ref}});
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace leoho
