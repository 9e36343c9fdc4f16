#pragma once

#include <cstdint>
#include <vector>

#include "scissor/road.hpp"

namespace scissor {

// Seeded random sampling of the road test space. Draft roads that violate a
// test-case invariant (self-intersection, minimum length) are resampled.
struct GeneratorConfig {
  std::uint64_t seed = 0;
  int segments_min = 3;
  int segments_max = 15;
  double straight_len_min = 20.0;
  double straight_len_max = 150.0;
  double turn_radius_min = 5.0;
  double turn_radius_max = 47.0;
  double turn_angle_min = 15.0;
  double turn_angle_max = 120.0;
  double p_straight = 0.30;
  double p_left = 0.35;
  double p_right = 0.35;
  double friction = 0.8;
  int max_retries = 1000;
};

GeneratorConfig default_generator_config();

// Throws ConfigInvalid on empty ranges, bad probabilities, or out-of-domain
// turn parameters.
void validate_config(const GeneratorConfig& config);

struct GenerationResult {
  std::vector<TestCase> tests;
  // Drafts thrown away before a valid road was found, by cause.
  std::uint64_t rejected_self_intersection = 0;
  std::uint64_t rejected_too_short = 0;

  std::uint64_t drafts() const {
    return tests.size() + rejected_self_intersection + rejected_too_short;
  }
  double rejection_fraction() const {
    const auto d = drafts();
    return d == 0 ? 0.0 : static_cast<double>(d - tests.size()) / static_cast<double>(d);
  }
};

// Produces exactly n valid test cases, a pure function of (config, n).
// Test i is drawn from its own stream derived from (seed, i), so the first
// five tests of generate(c, 10) equal generate(c, 5). Ids embed the seed,
// keeping id spaces of different seeds disjoint.
// Throws GenerationExhausted when one test burns through max_retries drafts.
GenerationResult generate(const GeneratorConfig& config, std::size_t n);

// Tests with indices [first, first + n); generate(c, n) == generate_range(c, 0, n).
GenerationResult generate_range(const GeneratorConfig& config, std::size_t first,
                                std::size_t n);

}  // namespace scissor
