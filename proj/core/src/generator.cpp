#include "scissor/generator.hpp"

#include <cmath>
#include <cstdio>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

namespace {

TestCase draft_test(const GeneratorConfig& cfg, Rng& rng) {
  TestCase t;
  const int count = static_cast<int>(rng.int_in(cfg.segments_min, cfg.segments_max));
  t.segments.reserve(static_cast<std::size_t>(count));
  const std::vector<double> cum = {cfg.p_straight, cfg.p_straight + cfg.p_left, 1.0};
  for (int i = 0; i < count; ++i) {
    const std::size_t kind = rng.pick(cum);
    if (kind == 0) {
      t.segments.push_back(RoadSegment::straight(
          rng.uniform(cfg.straight_len_min, cfg.straight_len_max), cfg.friction));
    } else {
      const double angle = rng.uniform(cfg.turn_angle_min, cfg.turn_angle_max);
      const double radius = rng.uniform(cfg.turn_radius_min, cfg.turn_radius_max);
      t.segments.push_back(
          RoadSegment::turn(kind == 1 ? angle : -angle, radius, cfg.friction));
    }
  }
  return t;
}

std::string make_id(std::uint64_t seed, std::size_t index) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "t%016llx-%06zu",
                static_cast<unsigned long long>(mix64(seed)), index);
  return buf;
}

}  // namespace

GeneratorConfig default_generator_config() { return GeneratorConfig{}; }

void validate_config(const GeneratorConfig& cfg) {
  if (cfg.segments_min < 2 || cfg.segments_max < cfg.segments_min) {
    throw ConfigInvalid("segment count range is empty or below 2");
  }
  if (!(cfg.straight_len_min > 0.0) || cfg.straight_len_max < cfg.straight_len_min) {
    throw ConfigInvalid("straight length range is empty or non-positive");
  }
  if (cfg.turn_radius_min < kMinTurnRadius || cfg.turn_radius_max > kMaxTurnRadius ||
      cfg.turn_radius_max < cfg.turn_radius_min) {
    throw ConfigInvalid("turn radius range must be a non-empty subset of [2, 47]");
  }
  if (cfg.turn_angle_min < kMinTurnAngle || cfg.turn_angle_max > kMaxTurnAngle ||
      cfg.turn_angle_max < cfg.turn_angle_min) {
    throw ConfigInvalid("turn angle range must be a non-empty subset of [15, 120]");
  }
  if (cfg.p_straight < 0.0 || cfg.p_left < 0.0 || cfg.p_right < 0.0 ||
      std::abs(cfg.p_straight + cfg.p_left + cfg.p_right - 1.0) > 1e-12) {
    throw ConfigInvalid("segment kind probabilities must be non-negative and sum to 1");
  }
  if (!(cfg.friction > 0.0) || cfg.friction > 2.0) {
    throw ConfigInvalid("friction must be in (0, 2]");
  }
  if (cfg.max_retries < 1) throw ConfigInvalid("max_retries must be at least 1");
}

GenerationResult generate(const GeneratorConfig& cfg, std::size_t n) {
  return generate_range(cfg, 0, n);
}

GenerationResult generate_range(const GeneratorConfig& cfg, std::size_t first,
                                std::size_t n) {
  validate_config(cfg);
  GenerationResult result;
  result.tests.reserve(n);
  for (std::size_t i = first; i < first + n; ++i) {
    Rng rng(derive_seed(cfg.seed, i));
    bool accepted = false;
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
      TestCase draft = draft_test(cfg, rng);
      if (path_length(draft) < kMinRoadLength) {
        ++result.rejected_too_short;
        continue;
      }
      if (self_intersects(draft)) {
        ++result.rejected_self_intersection;
        continue;
      }
      draft.id = make_id(cfg.seed, i);
      result.tests.push_back(std::move(draft));
      accepted = true;
      break;
    }
    if (!accepted) {
      throw GenerationExhausted(
          "no valid test case within max_retries drafts; config is over-constrained");
    }
  }
  return result;
}

}  // namespace scissor
