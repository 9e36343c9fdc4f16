#include "scissor/features.hpp"

#include <algorithm>
#include <cmath>

#include "scissor/error.hpp"

namespace scissor {

namespace {

struct Stats {
  double median = 0.0;
  double stddev = 0.0;
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
};

Stats stats_of(std::vector<double> v) {
  Stats s;
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  const std::size_t n = v.size();
  s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double x : v) sq += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(n));
  return s;
}

bool segment_unsafe(const LabeledTest& lt, std::size_t index) {
  return std::find(lt.obe_segments.begin(), lt.obe_segments.end(), index) !=
         lt.obe_segments.end();
}

}  // namespace

FullRoadFeatures extract_full_road(const TestCase& test, const ExtractOptions& opt) {
  FullRoadFeatures f;
  f.direct_distance = direct_distance(test);
  f.length = path_length(test);

  std::vector<double> angles;
  std::vector<double> radii;
  for (const auto& seg : test.segments) {
    switch (seg.kind) {
      case SegmentKind::Straight:
        f.num_straight += 1.0;
        break;
      case SegmentKind::LeftTurn:
        f.num_l_turns += 1.0;
        break;
      case SegmentKind::RightTurn:
        f.num_r_turns += 1.0;
        break;
    }
    if (seg.is_turn()) {
      f.total_angle += std::abs(seg.angle_deg);
      angles.push_back(opt.signed_angle_stats ? seg.angle_deg : std::abs(seg.angle_deg));
      radii.push_back(seg.radius_m);
    }
  }
  const Stats a = stats_of(std::move(angles));
  f.median_angle = a.median;
  f.std_angle = a.stddev;
  f.max_angle = a.max;
  f.min_angle = a.min;
  f.mean_angle = a.mean;
  const Stats r = stats_of(std::move(radii));
  f.median_radius = r.median;
  f.std_radius = r.stddev;
  f.max_radius = r.max;
  f.min_radius = r.min;
  f.mean_radius = r.mean;
  return f;
}

std::vector<SegmentFeatures> extract_segments(const TestCase& test) {
  std::vector<SegmentFeatures> out(test.segments.size());
  for (std::size_t i = 0; i < test.segments.size(); ++i) {
    const auto& seg = test.segments[i];
    SegmentFeatures& f = out[i];
    f.first = i == 0;
    f.last = i + 1 == test.segments.size();
    f.right_turn = seg.kind == SegmentKind::RightTurn;
    f.left_turn = seg.kind == SegmentKind::LeftTurn;
    f.straight = seg.kind == SegmentKind::Straight;
    f.angle = seg.angle_deg;
    f.radius = seg.radius_m;
    f.length = seg.length_m;
    f.direct_distance = segment_chord(seg);
    if (!f.first) {
      const auto& prev = test.segments[i - 1];
      f.prev_right_turn = prev.kind == SegmentKind::RightTurn;
      f.prev_left_turn = prev.kind == SegmentKind::LeftTurn;
      f.prev_straight = prev.kind == SegmentKind::Straight;
      f.prev_angle = prev.angle_deg;
      f.prev_radius = prev.radius_m;
      f.prev_length = prev.length_m;
      f.prev_direct_distance = segment_chord(prev);
    }
    if (!f.last) {
      const auto& next = test.segments[i + 1];
      f.next_right_turn = next.kind == SegmentKind::RightTurn;
      f.next_left_turn = next.kind == SegmentKind::LeftTurn;
      f.next_straight = next.kind == SegmentKind::Straight;
      f.next_angle = next.angle_deg;
      f.next_radius = next.radius_m;
      f.next_length = next.length_m;
      f.next_direct_distance = segment_chord(next);
    }
  }
  return out;
}

FeatureSchema full_road_schema() {
  FeatureSchema s;
  s.names = {"direct_distance", "length",        "num_l_turns",  "num_r_turns",
             "num_straight",    "total_angle",   "median_angle", "std_angle",
             "max_angle",       "min_angle",     "mean_angle",   "median_radius",
             "std_radius",      "max_radius",    "min_radius",   "mean_radius"};
  s.kinds.assign(s.names.size(), FeatureKind::Numeric);
  return s;
}

FeatureSchema segment_schema() {
  FeatureSchema s;
  s.names = {"first",
             "last",
             "right_turn",
             "left_turn",
             "straight",
             "angle",
             "radius",
             "length",
             "direct_distance",
             "prev_right_turn",
             "prev_left_turn",
             "prev_straight",
             "prev_angle",
             "prev_radius",
             "prev_length",
             "prev_direct_distance",
             "next_right_turn",
             "next_left_turn",
             "next_straight",
             "next_angle",
             "next_radius",
             "next_length",
             "next_direct_distance"};
  s.kinds.assign(s.names.size(), FeatureKind::Numeric);
  const char* const booleans[] = {"first",        "last",           "right_turn",
                                  "left_turn",    "straight",       "prev_right_turn",
                                  "prev_left_turn", "prev_straight", "next_right_turn",
                                  "next_left_turn", "next_straight"};
  for (const char* name : booleans) {
    for (std::size_t i = 0; i < s.names.size(); ++i) {
      if (s.names[i] == name) s.kinds[i] = FeatureKind::Boolean;
    }
  }
  return s;
}

LabeledVector vectorize(const FullRoadFeatures& f, Label label,
                        const std::string& test_id) {
  LabeledVector row;
  row.values = {f.direct_distance, f.length,     f.num_l_turns,  f.num_r_turns,
                f.num_straight,    f.total_angle, f.median_angle, f.std_angle,
                f.max_angle,       f.min_angle,  f.mean_angle,   f.median_radius,
                f.std_radius,      f.max_radius, f.min_radius,   f.mean_radius};
  row.label = label;
  row.test_id = test_id;
  row.segment_index = -1;
  return row;
}

LabeledVector vectorize(const SegmentFeatures& f, Label label,
                        const std::string& test_id, std::int64_t segment_index) {
  auto b = [](bool v) { return v ? 1.0 : 0.0; };
  LabeledVector row;
  row.values = {b(f.first),
                b(f.last),
                b(f.right_turn),
                b(f.left_turn),
                b(f.straight),
                f.angle,
                f.radius,
                f.length,
                f.direct_distance,
                b(f.prev_right_turn),
                b(f.prev_left_turn),
                b(f.prev_straight),
                f.prev_angle,
                f.prev_radius,
                f.prev_length,
                f.prev_direct_distance,
                b(f.next_right_turn),
                b(f.next_left_turn),
                b(f.next_straight),
                f.next_angle,
                f.next_radius,
                f.next_length,
                f.next_direct_distance};
  row.label = label;
  row.test_id = test_id;
  row.segment_index = segment_index;
  return row;
}

Dataset assemble_full_road(const std::vector<LabeledTest>& labeled,
                           const std::string& provenance, const ExtractOptions& opt) {
  Dataset d;
  d.schema = full_road_schema();
  d.provenance = provenance;
  d.rows.reserve(labeled.size());
  for (const auto& lt : labeled) {
    d.rows.push_back(vectorize(extract_full_road(lt.test, opt), lt.label, lt.test.id));
  }
  return d;
}

Dataset assemble_segments(const std::vector<LabeledTest>& labeled,
                          const std::string& provenance) {
  Dataset d;
  d.schema = segment_schema();
  d.provenance = provenance;
  for (const auto& lt : labeled) {
    const auto features = extract_segments(lt.test);
    for (std::size_t i = 0; i < features.size(); ++i) {
      const Label label = segment_unsafe(lt, i) ? Label::Unsafe : Label::Safe;
      d.rows.push_back(
          vectorize(features[i], label, lt.test.id, static_cast<std::int64_t>(i)));
    }
  }
  return d;
}

}  // namespace scissor
