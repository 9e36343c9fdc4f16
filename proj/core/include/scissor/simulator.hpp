#pragma once

#include <cstdint>
#include <vector>

#include "scissor/road.hpp"

namespace scissor {

// Kinematic lane-keeping driver. The driver plans a per-turn speed cap of
// aggression * sqrt(mu_assumed * perceived_radius * g), clipped at v_max,
// and follows an acceleration-limited profile over the path. A turn produces
// an out-of-bound episode when the driven speed exceeds the physical limit
// sqrt(mu_true * radius * g) anywhere on it.
//
// The default driver keeps a friction margin (mu_assumed well below the 0.8
// surface default) so that low aggression never produces an episode, while
// aggression eats into the margin. With v_max at 14 m/s, turns wider than
// v_max^2/(mu*g) (about 25 m radius on the default surface) can never
// produce an episode: the cap clips below the physical limit there, which is
// what makes tight-radius geometry the dominant risk signal.
struct DriverConfig {
  double aggression = 1.0;
  double mu_assumed = 0.35;
  double v_max = 14.0;          // m/s
  double a_acc = 3.0;           // m/s^2
  double a_dec = 6.0;           // m/s^2, magnitude
  double perception_noise = 0.25;  // eta_max, radius misjudged by +-25%
  std::uint64_t noise_seed = 0;
  double g = 9.81;
  double overhead_s = 5.0;      // fixed per-test cost on top of driving time
  double grid_step_m = 1.0;
};

// Throws InvalidValue when fields are out of domain.
void validate_driver(const DriverConfig& driver);

// Default driver at the given aggression factor.
DriverConfig default_driver(double aggression, std::uint64_t noise_seed = 0);

// A second test subject: a trajectory planner pinned at aggression 1.0 whose
// assumed friction deliberately differs from the surface value. Used for
// cross-subject transfer studies.
DriverConfig planner_driver(std::uint64_t noise_seed = 0);

struct SpeedSample {
  double position_m = 0.0;
  double speed = 0.0;
};

struct SimResult {
  Label label = Label::Safe;
  std::vector<std::size_t> obe_segments;
  std::vector<SpeedSample> speed_profile;
  double sim_duration_s = 0.0;
  double wall_cost_s = 0.0;
};

// Maximum flat-road cornering speed sqrt(mu * r * g).
// Throws DomainError for non-positive radius or friction.
double safe_speed(double radius_m, double mu, double g = 9.81);

// Deterministic function of (test, driver). Perception noise is drawn from a
// stream keyed by (noise_seed, test.id, segment index), so a test keeps its
// noise draws across driver settings.
SimResult simulate(const TestCase& test, const DriverConfig& driver);

// Element-wise simulate, order preserving.
std::vector<LabeledTest> label_batch(const std::vector<TestCase>& tests,
                                     const DriverConfig& driver);

}  // namespace scissor
