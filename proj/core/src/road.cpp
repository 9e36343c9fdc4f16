#include "scissor/road.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "scissor/error.hpp"

namespace scissor {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, 0 = +x
};

Pose advance(const Pose& pose, const RoadSegment& seg, double fraction) {
  Pose out = pose;
  if (seg.kind == SegmentKind::Straight) {
    const double d = seg.length_m * fraction;
    out.x += d * std::cos(pose.heading);
    out.y += d * std::sin(pose.heading);
    return out;
  }
  // Arc: the center sits at distance r on the side the road bends toward
  // (90 deg left of heading for a left turn), and the pose rotates about it.
  const double sign = seg.angle_deg > 0.0 ? 1.0 : -1.0;
  const double r = seg.radius_m;
  const double cx = pose.x - r * sign * std::sin(pose.heading);
  const double cy = pose.y + r * sign * std::cos(pose.heading);
  const double sweep = sign * std::abs(seg.angle_deg) * kDegToRad * fraction;
  const double dx = pose.x - cx;
  const double dy = pose.y - cy;
  out.x = cx + dx * std::cos(sweep) - dy * std::sin(sweep);
  out.y = cy + dx * std::sin(sweep) + dy * std::cos(sweep);
  out.heading = pose.heading + sweep;
  return out;
}

}  // namespace

RoadSegment RoadSegment::straight(double length_m, double friction) {
  RoadSegment s;
  s.kind = SegmentKind::Straight;
  s.length_m = length_m;
  s.friction = friction;
  validate_segment(s);
  return s;
}

RoadSegment RoadSegment::turn(double angle_deg, double radius_m, double friction) {
  RoadSegment s;
  s.kind = angle_deg > 0.0 ? SegmentKind::LeftTurn : SegmentKind::RightTurn;
  s.angle_deg = angle_deg;
  s.radius_m = radius_m;
  s.length_m = radius_m * std::abs(angle_deg) * kDegToRad;
  s.friction = friction;
  validate_segment(s);
  return s;
}

void validate_segment(const RoadSegment& seg) {
  if (!(seg.friction > 0.0) || seg.friction > 2.0) {
    throw InvalidValue("segment friction must be in (0, 2]");
  }
  if (seg.kind == SegmentKind::Straight) {
    if (seg.angle_deg != 0.0 || seg.radius_m != 0.0) {
      throw InvalidValue("straight segment must have zero angle and radius");
    }
    if (!(seg.length_m > 0.0)) {
      throw InvalidValue("straight segment must have positive length");
    }
    return;
  }
  const double mag = std::abs(seg.angle_deg);
  if (mag < kMinTurnAngle || mag > kMaxTurnAngle) {
    throw InvalidValue("turn angle magnitude must be in [15, 120] degrees");
  }
  if (seg.radius_m < kMinTurnRadius || seg.radius_m > kMaxTurnRadius) {
    throw InvalidValue("turn radius must be in [2, 47] meters");
  }
  if (seg.kind == SegmentKind::LeftTurn && !(seg.angle_deg > 0.0)) {
    throw InvalidValue("left turn must have positive angle");
  }
  if (seg.kind == SegmentKind::RightTurn && !(seg.angle_deg < 0.0)) {
    throw InvalidValue("right turn must have negative angle");
  }
  const double expected = seg.radius_m * mag * kDegToRad;
  if (std::abs(seg.length_m - expected) > 1e-6 * std::max(1.0, expected)) {
    throw InvalidValue("turn length must equal its arc length r*|angle|*pi/180");
  }
}

void validate_test(const TestCase& test) {
  if (test.segments.size() < 2) {
    throw InvalidValue("test case needs at least two segments");
  }
  for (const auto& seg : test.segments) validate_segment(seg);
  if (path_length(test) < kMinRoadLength) {
    std::ostringstream os;
    os << "path length " << path_length(test) << " m is below the " << kMinRoadLength
       << " m minimum";
    throw InvalidValue(os.str());
  }
  if (self_intersects(test)) {
    throw InvalidValue("path violates the self-intersection clearance");
  }
}

bool is_valid_test(const TestCase& test) {
  try {
    validate_test(test);
    return true;
  } catch (const InvalidValue&) {
    return false;
  }
}

std::vector<Point2> polyline(const TestCase& test, double step) {
  if (!(step > 0.0)) throw DomainError("polyline step must be positive");
  std::vector<Point2> points;
  points.push_back({0.0, 0.0});
  Pose pose;
  for (const auto& seg : test.segments) {
    const int n = std::max(1, static_cast<int>(std::ceil(seg.length_m / step)));
    for (int i = 1; i <= n; ++i) {
      const Pose p = advance(pose, seg, static_cast<double>(i) / n);
      points.push_back({p.x, p.y});
    }
    pose = advance(pose, seg, 1.0);
  }
  return points;
}

double direct_distance(const TestCase& test) {
  Pose pose;
  for (const auto& seg : test.segments) pose = advance(pose, seg, 1.0);
  return std::hypot(pose.x, pose.y);
}

double path_length(const TestCase& test) {
  double total = 0.0;
  for (const auto& seg : test.segments) total += seg.length_m;
  return total;
}

double segment_chord(const RoadSegment& seg) {
  if (seg.kind == SegmentKind::Straight) return seg.length_m;
  const double half = 0.5 * std::abs(seg.angle_deg) * kDegToRad;
  return 2.0 * seg.radius_m * std::sin(half);
}

bool self_intersects(const TestCase& test) {
  // Sampled sweep: points from non-adjacent segments that are also far apart
  // along the path must keep kSelfClearance laterally. The arc-gap floor of
  // 2x the clearance keeps short interleaved segments from flagging the
  // neighborhood of their shared joints.
  const double step = 2.0;
  const double min_arc_gap = 2.0 * kSelfClearance;

  struct Sample {
    Point2 p;
    double arc;
    std::size_t segment;
  };
  std::vector<Sample> samples;
  Pose pose;
  double arc_base = 0.0;
  samples.push_back({{0.0, 0.0}, 0.0, 0});
  for (std::size_t si = 0; si < test.segments.size(); ++si) {
    const auto& seg = test.segments[si];
    const int n = std::max(1, static_cast<int>(std::ceil(seg.length_m / step)));
    for (int i = 1; i <= n; ++i) {
      const double f = static_cast<double>(i) / n;
      const Pose p = advance(pose, seg, f);
      samples.push_back({{p.x, p.y}, arc_base + f * seg.length_m, si});
    }
    pose = advance(pose, seg, 1.0);
    arc_base += seg.length_m;
  }

  const double clearance_sq = kSelfClearance * kSelfClearance;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      if (samples[j].arc - samples[i].arc < min_arc_gap) continue;
      const std::size_t si = samples[i].segment;
      const std::size_t sj = samples[j].segment;
      if (sj <= si + 1) continue;
      const double dx = samples[i].p.x - samples[j].p.x;
      const double dy = samples[i].p.y - samples[j].p.y;
      if (dx * dx + dy * dy < clearance_sq) return true;
    }
  }
  return false;
}

}  // namespace scissor
