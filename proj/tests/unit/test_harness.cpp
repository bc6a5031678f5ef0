#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "leoho/io.hpp"
#include "leoho/mobility.hpp"
#include "leoho/scenario.hpp"
#include "support/oracle.hpp"

using namespace leoho;
namespace fs = std::filesystem;

namespace {

ScenarioConfig base_config(const std::string& preset, std::size_t count, double lat, double lon,
                           double duration_s) {
  ScenarioConfig cfg;
  cfg.name = "unit";
  cfg.constellation = constellation_preset(preset);
  cfg.ground_stations = read_ground_stations_csv(fs::path(LEOHO_SOURCE_DIR) / "data/ground_stations.csv");
  UeGroupSpec g;
  g.count = count;
  g.center = {lat, lon, 0.0};
  g.radius_km = 300.0;
  g.strategy = {StrategyKind::Consistent, true};
  cfg.ue_groups = {g};
  cfg.duration_s = duration_s;
  cfg.seed = 11;
  return cfg;
}

double mean_interval_s(const ScenarioConfig& cfg) {
  const auto r = run_scenario(cfg);
  REQUIRE_FALSE(r.report.partial);
  REQUIRE(r.report.handover_events > 0);
  return static_cast<double>(r.report.num_ues) * cfg.duration_s /
         static_cast<double>(r.report.handover_events);
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("leoho_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("mobility steps along a great circle") {
  UEState ue;
  ue.position = {30.0, 120.0, 0.0};
  CHECK(step_mobility(ue, 600.0).position.lat_deg == ue.position.lat_deg);
  CHECK(step_mobility(ue, 600.0).position.lon_deg == ue.position.lon_deg);

  ue.mobility = Mobility::great_circle(250.0, 45.0);
  const auto moved = step_mobility(ue, 600.0);
  CHECK(great_circle_km(ue.position, moved.position) == doctest::Approx(150.0).epsilon(1e-9));

  // Six 100 s steps land where one 600 s step does.
  UEState chained = ue;
  for (int i = 0; i < 6; ++i) chained = step_mobility(chained, 100.0);
  CHECK(great_circle_km(chained.position, moved.position) < 1e-6);

  UEState east;
  east.position = {0.0, 179.9, 0.0};
  east.mobility = Mobility::great_circle(250.0, 90.0);
  const auto across = step_mobility(east, 600.0);
  const double arc_deg = rad2deg(150.0 / kEarthRadiusKm);
  CHECK(across.position.lon_deg == doctest::Approx(179.9 + arc_deg - 360.0));
  CHECK(across.position.lat_deg == doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(step_mobility(ue, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(step_mobility(ue, -1.0), std::invalid_argument);
}

TEST_CASE("great circle destination") {
  const GeodeticPoint origin{0.0, 0.0, 0.0};
  const double quarter = kEarthRadiusKm * std::numbers::pi / 2.0;
  double final_heading = -1.0;
  const auto pole = great_circle_destination(origin, 0.0, quarter, &final_heading);
  CHECK(pole.lat_deg == doctest::Approx(90.0));
  const auto east = great_circle_destination(origin, 90.0, quarter, &final_heading);
  CHECK(east.lat_deg == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(east.lon_deg == doctest::Approx(90.0));
  CHECK(final_heading == doctest::Approx(90.0));

  oracle::Gen g(81);
  for (int i = 0; i < 1000; ++i) {
    const auto a = g.point(80.0);
    const double d = g.uniform(0.0, 5000.0);
    const auto b = great_circle_destination(a, g.uniform(0.0, 360.0), d);
    CHECK(great_circle_km(a, b) == doctest::Approx(d).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("config parsing and validation") {
  const std::string good = R"({
    "name": "p", "constellation": {"preset": "kuiper"},
    "ground_stations": [{"id": "a", "lat": 51.5, "lon": 0.0, "core": true}],
    "schemes": ["Proposed", "NTN"],
    "ue_groups": [{"count": 3, "region": {"lat": 10, "lon": 20, "radius_km": 50},
                   "strategy": "consistent", "speed_mps": 30, "heading_deg": 90,
                   "active": false}],
    "duration_s": 60, "seed": 3, "ephemeris_error": {"model": "daily_km_sigma", "sigma": 3}})";
  const auto cfg = parse_scenario_json(good);
  CHECK(cfg.name == "p");
  CHECK(cfg.constellation.num_planes == 34);
  CHECK(cfg.schemes.size() == 2);
  CHECK(cfg.ue_groups.at(0).strategy.kind == StrategyKind::Consistent);
  CHECK(cfg.ue_groups.at(0).heading_deg == 90.0);
  CHECK(cfg.ephemeris_error.sigma_km() == 3.0);
  CHECK_NOTHROW(validate(cfg));

  auto with = [&](const std::string& from, const std::string& to) {
    auto text = good;
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
  };
  CHECK_THROWS_AS(parse_scenario_json(with("\"seed\": 3", "\"seeed\": 3")), ConfigError);
  CHECK_THROWS_AS(parse_scenario_json(with("\"radius_km\": 50", "\"radius\": 50")), ConfigError);
  CHECK_THROWS_AS(parse_scenario_json(with("\"daily_km_sigma\"", "\"hourly\"")), ConfigError);
  CHECK_THROWS_AS(parse_scenario_json("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_scenario_json(with("\"preset\": \"kuiper\"", "\"preset\": \"oneweb\"")), ConfigError);

  auto bad = cfg;
  bad.duration_s = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.delta_t = 2.5;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.ue_groups[0].heading_deg = 360.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.ue_groups[0].speed_mps = -1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.ground_stations[0].attached_to_core = false;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.schemes = {Scheme::Proposed, Scheme::Proposed};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = cfg;
  bad.weather_mask = {static_cast<SatId>(cfg.constellation.total())};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  CHECK_THROWS_AS(run_scenario(bad), ConfigError);
}

TEST_CASE("the shipped configs load") {
  const fs::path dir = fs::path(LEOHO_SOURCE_DIR) / "configs";
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(validate(load_scenario_config(entry.path())));
  }
}

TEST_CASE("UE generation") {
  auto cfg = base_config("starlink", 200, 40.0, -100.0, 60.0);
  cfg.ue_groups[0].radius_km = 500.0;
  UeGroupSpec slow = cfg.ue_groups[0];
  slow.count = 50;
  slow.speed_mps = 83.0;
  slow.active = false;
  cfg.ue_groups.push_back(slow);
  UeGroupSpec silent = slow;
  silent.count = 5;
  silent.uplink_period_s = 0.0;
  cfg.ue_groups.push_back(silent);

  const auto ues = generate_ues(cfg);
  REQUIRE(ues.size() == 255);
  for (std::size_t i = 0; i < ues.size(); ++i) {
    CHECK(ues[i].ue_id == i);
    CHECK(great_circle_km(ues[i].position, cfg.ue_groups[0].center) <= 500.0 + 1e-9);
    CHECK_NOTHROW(validate(ues[i]));
  }
  CHECK_FALSE(ues[0].mobility.moving());
  CHECK(ues[0].uplink_period_s == 1.0);
  CHECK(ues[200].mobility.moving());
  CHECK(ues[200].uplink_period_s == 600.0);
  CHECK(ues[254].uplink_period_s == 0.0);

  const auto again = generate_ues(cfg);
  for (std::size_t i = 0; i < ues.size(); ++i) {
    CHECK(again[i].position.lat_deg == ues[i].position.lat_deg);
    CHECK(again[i].mobility.heading_deg == ues[i].mobility.heading_deg);
  }
}

TEST_CASE("runs are deterministic") {
  auto cfg = base_config("starlink", 20, 31.2, 121.5, 300.0);
  cfg.ue_groups[0].strategy.kind = StrategyKind::Flexible;
  UeGroupSpec moving = cfg.ue_groups[0];
  moving.count = 10;
  moving.speed_mps = 250.0;
  moving.active = false;
  cfg.ue_groups.push_back(moving);
  cfg.ephemeris_error = {EphemerisErrorModel::DailyKmSigma, 3.0};
  cfg.ping_stall = true;

  const auto a = run_scenario(cfg);
  const auto b = run_scenario(cfg);
  REQUIRE_FALSE(a.report.partial);
  CHECK(a.report.handover_events > 0);
  CHECK(records_csv(a.records) == records_csv(b.records));
  CHECK(report_json(a.report) == report_json(b.report));

  const auto da = scratch("det_a"), db = scratch("det_b");
  write_outputs(a, da);
  write_outputs(b, db);
  for (const char* f : {"records.csv", "report.json"}) {
    CHECK(read_text_file(da / f) == read_text_file(db / f));
  }
  CHECK(fs::exists(da / "timing.json"));

  cfg.seed += 1;
  CHECK(records_csv(run_scenario(cfg).records) != records_csv(a.records));
}

TEST_CASE("stationary UEs with exact ephemeris") {
  auto cfg = base_config("starlink", 60, 31.2, 121.5, 1800.0);
  cfg.ue_groups[0].strategy.kind = StrategyKind::Flexible;
  UeGroupSpec cons = cfg.ue_groups[0];
  cons.strategy.kind = StrategyKind::Consistent;
  cfg.ue_groups.push_back(cons);
  const auto r = run_scenario(cfg);
  REQUIRE_FALSE(r.report.partial);
  CHECK(r.report.handover_events > 0);
  CHECK(r.report.sync_invariant_violations == 0);
  for (const auto& s : r.report.schemes) CHECK(s.abnormal == 0);
  // Four schemes per event.
  CHECK(r.records.size() == 4 * r.report.handover_events);
}

TEST_CASE("ephemeris error drives abnormal handovers") {
  auto cfg = base_config("starlink", 100, 31.2, 121.5, 1800.0);
  cfg.schemes = {Scheme::Proposed};
  cfg.ephemeris_error = {EphemerisErrorModel::DailyKmSigma, 3.0};
  const auto coarse = run_scenario(cfg);
  REQUIRE_FALSE(coarse.report.partial);
  CHECK(coarse.report.schemes.at(0).abnormal > 0);

  cfg.ephemeris_error = {EphemerisErrorModel::MinuteCmSigma, 10.0};
  const auto fine = run_scenario(cfg);
  REQUIRE_FALSE(fine.report.partial);
  CHECK(fine.report.schemes.at(0).abnormal == 0);
  CHECK(fine.report.routing_mismatches == 0);
}

TEST_CASE("starlink consistent handover cadence") {
  auto cfg = base_config("starlink", 30, 31.2, 121.5, 7200.0);
  cfg.schemes = {Scheme::Proposed};
  const double interval = mean_interval_s(cfg);
  MESSAGE("starlink mean interval " << interval << " s");
  CHECK(interval >= 110.0);
  CHECK(interval <= 160.0);
}

TEST_CASE("kuiper consistent handover cadence") {
  auto cfg = base_config("kuiper", 30, 31.2, 121.5, 7200.0);
  cfg.schemes = {Scheme::Proposed};
  const double interval = mean_interval_s(cfg);
  MESSAGE("kuiper mean interval " << interval << " s");
  CHECK(interval >= 160.0);
  CHECK(interval <= 215.0);
}

void full_day_without_rapid_handovers(StrategyKind kind) {
  for (const std::string preset : {"starlink", "kuiper"}) {
    CAPTURE(preset);
    auto cfg = base_config(preset, 10, -20.0, 30.0, 86400.0);
    cfg.schemes = {Scheme::Proposed};
    cfg.ue_groups[0].strategy.kind = kind;
    const auto r = run_scenario(cfg);
    REQUIRE_FALSE(r.report.partial);
    CHECK(r.report.stationary_rapid_handovers == 0);
    CHECK(r.report.sync_invariant_violations == 0);
    CHECK(r.report.routing_mismatches == 0);
  }
}

TEST_CASE("a full day of stationary consistent users has no rapid handovers") {
  full_day_without_rapid_handovers(StrategyKind::Consistent);
}

TEST_CASE("a full day of stationary flexible users has no rapid handovers") {
  full_day_without_rapid_handovers(StrategyKind::Flexible);
}

TEST_CASE("a trace that ends early yields a partial report") {
  ConstellationConfig layout = constellation_preset("starlink");
  layout.num_planes = 2;
  layout.sats_per_plane = 3;
  layout.phasing_factor = 0;
  const AnalyticEphemeris truth(build_walker_constellation(layout));
  std::ostringstream csv;
  csv << "sat_id,t_seconds,x_km,y_km,z_km\n";
  csv.precision(17);
  for (double t = 0.0; t <= 60.0; t += 10.0) {
    for (SatId id = 0; id < truth.size(); ++id) {
      const auto p = truth.state(id, t).position_ecef_km;
      csv << id << ',' << t << ',' << p.x << ',' << p.y << ',' << p.z << '\n';
    }
  }
  const auto dir = scratch("trace");
  write_text_file(dir / "trace.csv", csv.str());

  auto cfg = base_config("starlink", 3, 0.0, 0.0, 120.0);
  cfg.constellation = layout;
  cfg.ephemeris_trace = dir / "trace.csv";
  cfg.schemes = {Scheme::Proposed};
  const auto r = run_scenario(cfg);
  CHECK(r.report.partial);
  CHECK_FALSE(r.report.error.empty());
  CHECK(report_json(r.report).find("\"partial\": true") != std::string::npos);
}
