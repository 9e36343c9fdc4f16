#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "scissor/error.hpp"
#include "scissor/generator.hpp"
#include "scissor/simulator.hpp"

using namespace scissor;

namespace {

std::vector<TestCase> reference_tests(std::size_t n, std::uint64_t seed = 42) {
  GeneratorConfig cfg = default_generator_config();
  cfg.seed = seed;
  return generate(cfg, n).tests;
}

DriverConfig noiseless(double aggression, double mu_assumed = 0.8, double v_max = 30.0) {
  DriverConfig d = default_driver(aggression);
  d.mu_assumed = mu_assumed;
  d.v_max = v_max;
  d.perception_noise = 0.0;
  return d;
}

}  // namespace

TEST_CASE("safe_speed follows the cornering formula") {
  CHECK(safe_speed(10.0, 1.0) == doctest::Approx(9.90454441).epsilon(1e-8));
  // sqrt scaling: quadrupling the radius doubles the speed.
  CHECK(safe_speed(40.0, 1.0) == doctest::Approx(2.0 * safe_speed(10.0, 1.0)).epsilon(1e-12));
  // Independent evaluation of sqrt(0.8 * 20 * 9.81).
  CHECK(safe_speed(20.0, 0.8) == doctest::Approx(12.5283678).epsilon(1e-8));

  CHECK_THROWS_AS(safe_speed(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(safe_speed(-5.0, 1.0), DomainError);
  CHECK_THROWS_AS(safe_speed(10.0, 0.0), DomainError);
}

TEST_CASE("all-straight paths are safe at any aggression") {
  TestCase t;
  t.id = "straights";
  t.segments = {RoadSegment::straight(120.0), RoadSegment::straight(80.0)};
  for (double af : {0.5, 1.0, 2.0, 5.0}) {
    const SimResult r = simulate(t, default_driver(af, 123));
    CHECK(r.label == Label::Safe);
    CHECK(r.obe_segments.empty());
  }
}

TEST_CASE("matched driver at aggression 1 never faults") {
  const auto tests = reference_tests(100);
  const DriverConfig d = noiseless(1.0);
  for (const auto& t : tests) {
    const SimResult r = simulate(t, d);
    CHECK(r.label == Label::Safe);
  }
}

TEST_CASE("hand-built two-segment run matches the closed-form profile") {
  TestCase t;
  t.id = "hand";
  t.segments = {RoadSegment::straight(200.0), RoadSegment::turn(90.0, 10.0)};
  DriverConfig d = noiseless(2.0);
  d.a_dec = 50.0;  // strong brakes: the turn cap, not braking, binds on the turn

  const SimResult r = simulate(t, d);
  const double physical = std::sqrt(0.8 * 10.0 * 9.81);  // 8.8589
  const double cap = 2.0 * physical;                     // 17.7177, below v_max

  CHECK(r.label == Label::Unsafe);
  REQUIRE(r.obe_segments.size() == 1);
  CHECK(r.obe_segments[0] == 1);

  // Closed form: v = sqrt(2*3*s) until v_max at s = 150, hold 30, brake to the
  // cap just before s = 200, then ride the cap along the whole turn.
  for (const auto& sample : r.speed_profile) {
    if (sample.position_m <= 150.0) {
      CHECK(sample.speed ==
            doctest::Approx(std::min(30.0, std::sqrt(6.0 * sample.position_m)))
                .epsilon(1e-9));
    } else if (sample.position_m <= 194.0) {
      CHECK(sample.speed == doctest::Approx(30.0).epsilon(1e-9));
    } else if (sample.position_m >= 200.0) {
      CHECK(sample.speed == doctest::Approx(cap).epsilon(1e-9));
      CHECK(sample.speed > physical);
    }
  }

  // Duration equals the piecewise constant-acceleration integral of the
  // emitted profile.
  double duration = 0.0;
  for (std::size_t k = 1; k < r.speed_profile.size(); ++k) {
    const double ds = r.speed_profile[k].position_m - r.speed_profile[k - 1].position_m;
    const double vs = r.speed_profile[k].speed + r.speed_profile[k - 1].speed;
    if (ds > 0 && vs > 0) duration += 2.0 * ds / vs;
  }
  CHECK(r.sim_duration_s == doctest::Approx(duration).epsilon(1e-12));
  CHECK(r.wall_cost_s == doctest::Approx(duration + d.overhead_s).epsilon(1e-12));
}

TEST_CASE("simulation is bit-stable across calls") {
  const auto tests = reference_tests(5);
  const DriverConfig d = default_driver(1.5, 7);
  for (const auto& t : tests) {
    const SimResult a = simulate(t, d);
    const SimResult b = simulate(t, d);
    CHECK(a.label == b.label);
    CHECK(a.obe_segments == b.obe_segments);
    CHECK(a.sim_duration_s == b.sim_duration_s);
    REQUIRE(a.speed_profile.size() == b.speed_profile.size());
    for (std::size_t k = 0; k < a.speed_profile.size(); ++k) {
      CHECK(a.speed_profile[k].speed == b.speed_profile[k].speed);
    }
  }
}

TEST_CASE("profiles respect speed and acceleration limits") {
  const auto tests = reference_tests(40);
  const DriverConfig d = default_driver(1.8, 11);
  for (const auto& t : tests) {
    const SimResult r = simulate(t, d);
    for (std::size_t k = 0; k < r.speed_profile.size(); ++k) {
      CHECK(r.speed_profile[k].speed >= 0.0);
      CHECK(r.speed_profile[k].speed <= d.v_max + 1e-12);
      if (k == 0) continue;
      const double ds = r.speed_profile[k].position_m - r.speed_profile[k - 1].position_m;
      if (ds <= 0) continue;
      const double dv2 = r.speed_profile[k].speed * r.speed_profile[k].speed -
                         r.speed_profile[k - 1].speed * r.speed_profile[k - 1].speed;
      CHECK(std::abs(dv2) / (2.0 * ds) <= std::max(d.a_acc, d.a_dec) + 1e-9);
    }
  }
}

TEST_CASE("labels are monotone in aggression") {
  const auto tests = reference_tests(100);
  const double factors[] = {1.0, 1.3, 1.6, 2.0, 2.5};
  SUBCASE("without perception noise") {
    for (const auto& t : tests) {
      bool was_unsafe = false;
      for (double af : factors) {
        const bool unsafe = simulate(t, noiseless(af, 0.8, 14.0)).label == Label::Unsafe;
        if (was_unsafe) CHECK(unsafe);
        was_unsafe = unsafe;
      }
    }
  }
  SUBCASE("with noise draws shared across aggression levels") {
    for (const auto& t : tests) {
      bool was_unsafe = false;
      for (double af : factors) {
        const bool unsafe = simulate(t, default_driver(af, 7)).label == Label::Unsafe;
        if (was_unsafe) CHECK(unsafe);
        was_unsafe = unsafe;
      }
    }
  }
}

TEST_CASE("widening a turn never creates a fault on it") {
  const auto tests = reference_tests(60);
  const DriverConfig d = noiseless(1.5, 0.5, 14.0);
  for (const auto& t : tests) {
    std::size_t turn_index = t.segments.size();
    for (std::size_t i = 0; i < t.segments.size(); ++i) {
      if (t.segments[i].is_turn() && t.segments[i].radius_m <= 30.0) {
        turn_index = i;
        break;
      }
    }
    if (turn_index == t.segments.size()) continue;

    const SimResult before = simulate(t, d);
    const bool had_obe =
        std::find(before.obe_segments.begin(), before.obe_segments.end(), turn_index) !=
        before.obe_segments.end();
    if (had_obe) continue;

    TestCase widened = t;
    auto& seg = widened.segments[turn_index];
    seg = RoadSegment::turn(seg.angle_deg, std::min(47.0, seg.radius_m * 1.5),
                            seg.friction);
    const SimResult after = simulate(widened, d);
    const bool has_obe =
        std::find(after.obe_segments.begin(), after.obe_segments.end(), turn_index) !=
        after.obe_segments.end();
    CHECK_FALSE(has_obe);
  }
}

TEST_CASE("label_batch is element-wise and order preserving") {
  CHECK(label_batch({}, default_driver(1.5)).empty());

  const auto tests = reference_tests(20);
  const DriverConfig d = default_driver(1.5, 7);
  const auto labeled = label_batch(tests, d);
  REQUIRE(labeled.size() == tests.size());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    CHECK(labeled[i].test.id == tests[i].id);
    const SimResult r = simulate(tests[i], d);
    CHECK(labeled[i].label == r.label);
    CHECK(labeled[i].sim_duration_s == r.sim_duration_s);
    CHECK(labeled[i].wall_cost_s == r.wall_cost_s);
    CHECK((labeled[i].label == Label::Unsafe) == !labeled[i].obe_segments.empty());
    CHECK(labeled[i].sim_duration_s > 0.0);
  }
}

TEST_CASE("unsafe fraction grows with aggression on the reference population") {
  const auto tests = reference_tests(500);
  std::size_t unsafe[3] = {0, 0, 0};
  const double factors[] = {1.0, 1.5, 2.0};
  for (int i = 0; i < 3; ++i) {
    for (const auto& lt : label_batch(tests, default_driver(factors[i], 7))) {
      unsafe[i] += lt.label == Label::Unsafe;
    }
  }
  CHECK(unsafe[0] < unsafe[1]);
  CHECK(unsafe[1] < unsafe[2]);
  CHECK(unsafe[2] >= 2 * unsafe[0]);
  // Regression pins, measured once on seed 42 / noise seed 7.
  CHECK(unsafe[0] == 0);
  CHECK(unsafe[1] == 327);
  CHECK(unsafe[2] == 452);
}

TEST_CASE("mean safe-test wall cost sits in the calibrated band") {
  const auto tests = reference_tests(500);
  const auto labeled = label_batch(tests, default_driver(1.5, 7));
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& lt : labeled) {
    if (lt.label == Label::Safe) {
      sum += lt.wall_cost_s;
      ++n;
    }
  }
  REQUIRE(n > 0);
  const double mean = sum / static_cast<double>(n);
  CHECK(mean >= 15.0);
  CHECK(mean <= 40.0);
}
