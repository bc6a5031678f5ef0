#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "leoho/geo.hpp"
#include "support/oracle.hpp"

using namespace leoho;

TEST_CASE("longitude normalisation lands in [-180, 180)") {
  CHECK(normalize_lon_deg(180.0) == -180.0);
  CHECK(normalize_lon_deg(-180.0) == -180.0);
  CHECK(normalize_lon_deg(190.0) == doctest::Approx(-170.0));
  CHECK(normalize_lon_deg(-190.0) == doctest::Approx(170.0));
  CHECK(normalize_lon_deg(720.5) == doctest::Approx(0.5));
  oracle::Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    const double lon = normalize_lon_deg(g.uniform(-2000.0, 2000.0));
    CHECK(lon >= -180.0);
    CHECK(lon < 180.0);
  }
}

TEST_CASE("geodetic validation") {
  CHECK_NOTHROW(validate(GeodeticPoint{90.0, -180.0, 0.0}));
  CHECK_THROWS_AS(validate(GeodeticPoint{90.5, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GeodeticPoint{0.0, 180.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GeodeticPoint{0.0, 0.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(GeodeticPoint{NAN, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("ECEF round trip") {
  oracle::Gen g(12);
  for (int i = 0; i < 1000; ++i) {
    GeodeticPoint p = g.point(89.0);
    p.alt_km = g.uniform(0.0, 2000.0);
    const auto q = to_geodetic(to_ecef(p));
    CHECK(q.lat_deg == doctest::Approx(p.lat_deg).epsilon(1e-9));
    CHECK(q.lon_deg == doctest::Approx(p.lon_deg).epsilon(1e-9));
    CHECK(q.alt_km == doctest::Approx(p.alt_km).epsilon(1e-9));
    CHECK(to_ecef(p).norm() == doctest::Approx(kEarthRadiusKm + p.alt_km));
  }
}

TEST_CASE("elevation: zenith, horizon and antipode") {
  const GeodeticPoint ue{30.0, 40.0, 0.0};
  const Vec3 obs = to_ecef(ue);
  CHECK(elevation_deg(obs, to_ecef({30.0, 40.0, 550.0})) == doctest::Approx(90.0));
  CHECK(elevation_deg(obs, to_ecef({-30.0, -140.0, 550.0})) < 0.0);
  // A point on the tangent plane sits on the horizon.
  const Vec3 east{-std::sin(deg2rad(40.0)), std::cos(deg2rad(40.0)), 0.0};
  CHECK(elevation_deg(obs, obs + east * 100.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("great-circle distance") {
  CHECK(great_circle_km({0, 0, 0}, {0, 90, 0}) == doctest::Approx(kEarthRadiusKm * M_PI / 2));
  CHECK(great_circle_km({90, 0, 0}, {-90, 0, 0}) == doctest::Approx(kEarthRadiusKm * M_PI));
  CHECK(central_angle_rad({10, 20, 0}, {10, 20, 0}) == doctest::Approx(0.0));
  oracle::Gen g(13);
  for (int i = 0; i < 200; ++i) {
    const auto a = g.point(), b = g.point();
    CHECK(great_circle_km(a, b) == doctest::Approx(great_circle_km(b, a)));
    // Chord never exceeds arc.
    CHECK((to_ecef(a) - to_ecef(b)).norm() <= great_circle_km(a, b) + 1e-9);
  }
}
