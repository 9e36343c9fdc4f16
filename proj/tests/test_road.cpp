#include <cmath>
#include <numbers>

#include "doctest.h"
#include "scissor/error.hpp"
#include "scissor/generator.hpp"
#include "scissor/road.hpp"
#include "scissor/road_io.hpp"

using namespace scissor;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent forward-kinematics oracle: composes closed-form per-segment
// rigid motions instead of the incremental arc tracing the library uses.
struct OraclePose {
  double x = 0.0, y = 0.0, heading = 0.0;
};

OraclePose oracle_endpoint(const TestCase& t) {
  OraclePose p;
  for (const auto& seg : t.segments) {
    double dx, dy, dh;
    if (seg.kind == SegmentKind::Straight) {
      dx = seg.length_m;
      dy = 0.0;
      dh = 0.0;
    } else {
      const double a = std::abs(seg.angle_deg) * kPi / 180.0;
      const double sign = seg.angle_deg > 0 ? 1.0 : -1.0;
      dx = seg.radius_m * std::sin(a);
      dy = sign * seg.radius_m * (1.0 - std::cos(a));
      dh = sign * a;
    }
    p.x += dx * std::cos(p.heading) - dy * std::sin(p.heading);
    p.y += dx * std::sin(p.heading) + dy * std::cos(p.heading);
    p.heading += dh;
  }
  return p;
}

TestCase three_segment_path() {
  TestCase t;
  t.id = "t3";
  t.segments = {RoadSegment::straight(100.0), RoadSegment::turn(90.0, 20.0),
                RoadSegment::straight(50.0)};
  return t;
}

}  // namespace

TEST_CASE("polyline traces straights exactly") {
  TestCase t;
  t.segments = {RoadSegment::straight(100.0), RoadSegment::straight(1.0)};
  const auto pts = polyline(t, 50.0);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].x == doctest::Approx(0.0));
  CHECK(pts[1].x == doctest::Approx(50.0));
  CHECK(pts[1].y == doctest::Approx(0.0));
  CHECK(pts[2].x == doctest::Approx(100.0));
}

TEST_CASE("quarter-circle left turn ends at (r, r) heading +y") {
  TestCase t;
  t.id = "q";
  t.segments = {RoadSegment::turn(90.0, 20.0), RoadSegment::straight(30.0)};
  const auto pts = polyline(t, 0.5);
  // After the turn plus a straight along the new heading the endpoint is
  // (20, 20 + 30).
  CHECK(pts.back().x == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(pts.back().y == doctest::Approx(50.0).epsilon(1e-9));
}

TEST_CASE("three-segment endpoint matches the rigid-motion oracle") {
  const TestCase t = three_segment_path();
  const auto pts = polyline(t, 1.0);
  const OraclePose end = oracle_endpoint(t);
  CHECK(end.x == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(end.y == doctest::Approx(70.0).epsilon(1e-12));
  CHECK(pts.back().x == doctest::Approx(end.x).epsilon(1e-9));
  CHECK(pts.back().y == doctest::Approx(end.y).epsilon(1e-9));
}

TEST_CASE("direct distance") {
  TestCase straight;
  straight.segments = {RoadSegment::straight(60.0), RoadSegment::straight(40.0)};
  CHECK(direct_distance(straight) == doctest::Approx(100.0));

  TestCase quarter;
  quarter.segments = {RoadSegment::turn(90.0, 20.0), RoadSegment::turn(-90.0, 20.0)};
  // Chord of the first quarter circle alone is 20*sqrt(2).
  TestCase single;
  single.segments = {RoadSegment::turn(90.0, 20.0), RoadSegment::turn(90.0, 20.0)};
  CHECK(segment_chord(single.segments[0]) == doctest::Approx(20.0 * std::sqrt(2.0)));

  const TestCase t = three_segment_path();
  CHECK(direct_distance(t) == doctest::Approx(std::hypot(120.0, 70.0)).epsilon(1e-12));
  CHECK(direct_distance(t) == doctest::Approx(138.92443989).epsilon(1e-9));
}

TEST_CASE("path length sums arc lengths") {
  TestCase t;
  t.segments = {RoadSegment::straight(100.0), RoadSegment::turn(90.0, 20.0),
                RoadSegment::turn(-45.0, 10.0)};
  CHECK(path_length(t) ==
        doctest::Approx(100.0 + 20.0 * kPi / 2.0 + 10.0 * kPi / 4.0).epsilon(1e-12));
  CHECK(path_length(t) == doctest::Approx(139.26990817).epsilon(1e-9));

  TestCase quarter;
  quarter.segments = {RoadSegment::turn(90.0, 20.0)};
  CHECK(path_length(quarter) == doctest::Approx(10.0 * kPi));
}

TEST_CASE("generated roads satisfy triangle and refinement properties") {
  GeneratorConfig cfg = default_generator_config();
  cfg.seed = 3;
  const auto gen = generate(cfg, 50);
  for (const auto& t : gen.tests) {
    CHECK(direct_distance(t) <= path_length(t) + 1e-9);

    // Reversal with flipped angle signs preserves length and straight-line
    // distance.
    TestCase rev;
    rev.segments.assign(t.segments.rbegin(), t.segments.rend());
    for (auto& seg : rev.segments) {
      if (seg.is_turn()) {
        seg.angle_deg = -seg.angle_deg;
        seg.kind = seg.angle_deg > 0 ? SegmentKind::LeftTurn : SegmentKind::RightTurn;
      }
    }
    CHECK(path_length(rev) == doctest::Approx(path_length(t)).epsilon(1e-12));
    CHECK(direct_distance(rev) == doctest::Approx(direct_distance(t)).epsilon(1e-9));

    // Refining the sampling step must not move the endpoint.
    const auto coarse = polyline(t, 5.0);
    const auto fine = polyline(t, 1.0);
    CHECK(std::hypot(coarse.back().x - fine.back().x, coarse.back().y - fine.back().y) <
          1e-9);
  }
}

TEST_CASE("segment validation rejects out-of-domain values") {
  CHECK_THROWS_AS(RoadSegment::straight(0.0), InvalidValue);
  CHECK_THROWS_AS(RoadSegment::straight(-5.0), InvalidValue);
  CHECK_THROWS_AS(RoadSegment::straight(10.0, 0.0), InvalidValue);
  CHECK_THROWS_AS(RoadSegment::straight(10.0, 2.5), InvalidValue);
  CHECK_THROWS_AS(RoadSegment::turn(10.0, 20.0), InvalidValue);   // angle below 15
  CHECK_THROWS_AS(RoadSegment::turn(130.0, 20.0), InvalidValue);  // angle above 120
  CHECK_THROWS_AS(RoadSegment::turn(90.0, 1.0), InvalidValue);    // radius below 2
  CHECK_THROWS_AS(RoadSegment::turn(90.0, 50.0), InvalidValue);   // radius above 47

  RoadSegment bad = RoadSegment::turn(90.0, 20.0);
  bad.length_m = 5.0;  // not the arc length
  CHECK_THROWS_AS(validate_segment(bad), InvalidValue);

  RoadSegment crooked = RoadSegment::straight(10.0);
  crooked.angle_deg = 5.0;
  CHECK_THROWS_AS(validate_segment(crooked), InvalidValue);
}

TEST_CASE("test validation enforces size, length, and clearance") {
  TestCase one;
  one.segments = {RoadSegment::straight(100.0)};
  CHECK_THROWS_AS(validate_test(one), InvalidValue);

  TestCase tiny;
  tiny.segments = {RoadSegment::straight(10.0), RoadSegment::straight(10.0)};
  CHECK_THROWS_AS(validate_test(tiny), InvalidValue);

  CHECK(is_valid_test(three_segment_path()));

  // A path that loops back across itself.
  TestCase crossing;
  crossing.segments = {RoadSegment::straight(100.0), RoadSegment::turn(90.0, 8.0),
                       RoadSegment::straight(20.0),  RoadSegment::turn(90.0, 8.0),
                       RoadSegment::straight(50.0),  RoadSegment::turn(90.0, 8.0),
                       RoadSegment::straight(60.0)};
  CHECK(self_intersects(crossing));
  CHECK_FALSE(is_valid_test(crossing));

  // A hairpin that comes back 8 m short of its own outbound leg.
  TestCase hairpin;
  hairpin.segments = {RoadSegment::straight(80.0), RoadSegment::turn(90.0, 3.0),
                      RoadSegment::turn(90.0, 3.0), RoadSegment::straight(80.0)};
  CHECK(self_intersects(hairpin));
}

TEST_CASE("test JSON round-trips bit-exactly") {
  GeneratorConfig cfg = default_generator_config();
  cfg.seed = 11;
  const auto tests = generate(cfg, 10).tests;
  const std::string once = tests_to_json(tests);
  const auto parsed = tests_from_json(once);
  REQUIRE(parsed.size() == tests.size());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    CHECK(parsed[i].id == tests[i].id);
    REQUIRE(parsed[i].segments.size() == tests[i].segments.size());
    for (std::size_t s = 0; s < tests[i].segments.size(); ++s) {
      CHECK(parsed[i].segments[s].kind == tests[i].segments[s].kind);
      // exact, not approximate
      CHECK(parsed[i].segments[s].angle_deg == tests[i].segments[s].angle_deg);
      CHECK(parsed[i].segments[s].radius_m == tests[i].segments[s].radius_m);
      CHECK(parsed[i].segments[s].length_m == tests[i].segments[s].length_m);
      CHECK(parsed[i].segments[s].friction == tests[i].segments[s].friction);
    }
  }
  CHECK(tests_to_json(parsed) == once);
}
