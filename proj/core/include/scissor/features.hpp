#pragma once

#include <vector>

#include "scissor/dataset.hpp"
#include "scissor/road.hpp"

namespace scissor {

// Global descriptors of one driving path. Angle statistics run over turn
// magnitudes and radius statistics over turn radii; a path without turns
// gets zero sentinels for all of them. Standard deviations are population
// deviations (zero for a single turn).
struct FullRoadFeatures {
  double direct_distance = 0.0;
  double length = 0.0;
  double num_l_turns = 0.0;
  double num_r_turns = 0.0;
  double num_straight = 0.0;
  double total_angle = 0.0;
  double median_angle = 0.0;
  double std_angle = 0.0;
  double max_angle = 0.0;
  double min_angle = 0.0;
  double mean_angle = 0.0;
  double median_radius = 0.0;
  double std_radius = 0.0;
  double max_radius = 0.0;
  double min_radius = 0.0;
  double mean_radius = 0.0;
};

// Per-segment descriptors with immediate-neighbor context. Angles are
// signed here; missing neighbors (first/last segment) zero out the
// corresponding prev_*/next_* block.
struct SegmentFeatures {
  bool first = false;
  bool last = false;
  bool right_turn = false;
  bool left_turn = false;
  bool straight = false;
  double angle = 0.0;
  double radius = 0.0;
  double length = 0.0;
  double direct_distance = 0.0;
  bool prev_right_turn = false;
  bool prev_left_turn = false;
  bool prev_straight = false;
  double prev_angle = 0.0;
  double prev_radius = 0.0;
  double prev_length = 0.0;
  double prev_direct_distance = 0.0;
  bool next_right_turn = false;
  bool next_left_turn = false;
  bool next_straight = false;
  double next_angle = 0.0;
  double next_radius = 0.0;
  double next_length = 0.0;
  double next_direct_distance = 0.0;
};

struct ExtractOptions {
  // When set, angle statistics use signed angles instead of magnitudes.
  bool signed_angle_stats = false;
};

FullRoadFeatures extract_full_road(const TestCase& test, const ExtractOptions& opt = {});
std::vector<SegmentFeatures> extract_segments(const TestCase& test);

// Canonical column orders; documented in the README.
FeatureSchema full_road_schema();
FeatureSchema segment_schema();

LabeledVector vectorize(const FullRoadFeatures& f, Label label,
                        const std::string& test_id);
LabeledVector vectorize(const SegmentFeatures& f, Label label,
                        const std::string& test_id, std::int64_t segment_index);

// Dataset assembly over a labeled corpus: one full-road row per test, or one
// segment row per segment (a segment is unsafe exactly when an episode was
// observed on it).
Dataset assemble_full_road(const std::vector<LabeledTest>& labeled,
                           const std::string& provenance, const ExtractOptions& opt = {});
Dataset assemble_segments(const std::vector<LabeledTest>& labeled,
                          const std::string& provenance);

}  // namespace scissor
