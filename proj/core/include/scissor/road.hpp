#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace scissor {

// Geometry limits for turn segments. Turn radii live in [2, 47] m and turn
// magnitudes in [15, 120] degrees; straights have positive length and no
// curvature. Established empirically for two-lane virtual roads.
inline constexpr double kMinTurnRadius = 2.0;
inline constexpr double kMaxTurnRadius = 47.0;
inline constexpr double kMinTurnAngle = 15.0;
inline constexpr double kMaxTurnAngle = 120.0;
inline constexpr double kMinRoadLength = 50.0;

// Two non-adjacent parts of a road must keep this much clearance (about two
// lane widths) or the ribbon overlaps itself.
inline constexpr double kSelfClearance = 8.0;

enum class SegmentKind { Straight, LeftTurn, RightTurn };

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// One piece of a driving path. Straights carry a length; turns carry a
// signed angle (positive = left, negative = right) and a radius, with
// length derived as the arc length r*|angle|*pi/180.
struct RoadSegment {
  SegmentKind kind = SegmentKind::Straight;
  double angle_deg = 0.0;
  double radius_m = 0.0;
  double length_m = 0.0;
  double friction = 0.8;

  static RoadSegment straight(double length_m, double friction = 0.8);
  // Sign of angle_deg selects the kind: positive angles turn left.
  static RoadSegment turn(double angle_deg, double radius_m, double friction = 0.8);

  bool is_turn() const { return kind != SegmentKind::Straight; }
};

// A test case: the driving path the ego-car must traverse, as an ordered
// list of segments. The polyline is derived; paths start at the origin
// heading +x.
struct TestCase {
  std::string id;
  std::vector<RoadSegment> segments;
};

enum class Label { Safe, Unsafe };

inline const char* to_string(Label label) {
  return label == Label::Safe ? "safe" : "unsafe";
}

// A test case together with its revealed outcome and modeled execution cost.
struct LabeledTest {
  TestCase test;
  Label label = Label::Safe;
  std::vector<std::size_t> obe_segments;
  double sim_duration_s = 0.0;
  double wall_cost_s = 0.0;
};

// Throws InvalidValue when a segment violates its invariants.
void validate_segment(const RoadSegment& seg);

// Throws InvalidValue when the test violates its invariants (segment count,
// minimum total length, self-intersection clearance).
void validate_test(const TestCase& test);

bool is_valid_test(const TestCase& test);

// Samples the path every <= step meters. The first point is the origin and
// every segment boundary (including the endpoint) is emitted exactly.
std::vector<Point2> polyline(const TestCase& test, double step);

// Euclidean distance between start and finish of the path.
double direct_distance(const TestCase& test);

// Total length of the driving path (arc length for turns).
double path_length(const TestCase& test);

// Straight-line distance between a single segment's endpoints
// (the chord 2*r*sin(|angle|/2) for turns).
double segment_chord(const RoadSegment& seg);

// True when two non-adjacent stretches of the sampled path come closer than
// kSelfClearance. Point pairs within twice the clearance along the path are
// exempt; curvature bounds keep them from being genuine overlaps.
bool self_intersects(const TestCase& test);

}  // namespace scissor
