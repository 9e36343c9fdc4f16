#include "scissor/road_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "scissor/error.hpp"

namespace scissor {

namespace {

using nlohmann::json;

const char* kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Straight: return "straight";
    case SegmentKind::LeftTurn: return "left_turn";
    case SegmentKind::RightTurn: return "right_turn";
  }
  return "?";
}

SegmentKind kind_from(const std::string& name) {
  if (name == "straight") return SegmentKind::Straight;
  if (name == "left_turn") return SegmentKind::LeftTurn;
  if (name == "right_turn") return SegmentKind::RightTurn;
  throw Error("unknown segment kind: " + name);
}

json segment_to_json(const RoadSegment& seg) {
  return json{{"kind", kind_name(seg.kind)},
              {"angle_deg", seg.angle_deg},
              {"radius_m", seg.radius_m},
              {"length_m", seg.length_m},
              {"friction", seg.friction}};
}

RoadSegment segment_from_json(const json& j) {
  RoadSegment seg;
  seg.kind = kind_from(j.at("kind").get<std::string>());
  seg.angle_deg = j.at("angle_deg").get<double>();
  seg.radius_m = j.at("radius_m").get<double>();
  seg.length_m = j.at("length_m").get<double>();
  seg.friction = j.at("friction").get<double>();
  return seg;
}

}  // namespace

std::string tests_to_json(const std::vector<TestCase>& tests) {
  json arr = json::array();
  for (const auto& t : tests) {
    json segs = json::array();
    for (const auto& s : t.segments) segs.push_back(segment_to_json(s));
    arr.push_back(json{{"id", t.id}, {"segments", std::move(segs)}});
  }
  return arr.dump(2) + "\n";
}

std::vector<TestCase> tests_from_json(const std::string& json_text) {
  json arr = json::parse(json_text);
  std::vector<TestCase> tests;
  tests.reserve(arr.size());
  for (const auto& j : arr) {
    TestCase t;
    t.id = j.at("id").get<std::string>();
    for (const auto& s : j.at("segments")) t.segments.push_back(segment_from_json(s));
    tests.push_back(std::move(t));
  }
  return tests;
}

std::string labels_to_json(const std::vector<LabeledTest>& labeled) {
  json arr = json::array();
  for (const auto& lt : labeled) {
    arr.push_back(json{{"test_id", lt.test.id},
                       {"label", to_string(lt.label)},
                       {"obe_segments", lt.obe_segments},
                       {"sim_duration_s", lt.sim_duration_s},
                       {"wall_cost_s", lt.wall_cost_s}});
  }
  return arr.dump(2) + "\n";
}

std::vector<LabeledTest> labels_from_json(const std::string& json_text,
                                          const std::vector<TestCase>& tests) {
  std::unordered_map<std::string, const TestCase*> by_id;
  for (const auto& t : tests) by_id[t.id] = &t;

  json arr = json::parse(json_text);
  std::vector<LabeledTest> out;
  out.reserve(arr.size());
  for (const auto& j : arr) {
    LabeledTest lt;
    const auto id = j.at("test_id").get<std::string>();
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("label record references unknown test_id: " + id);
    lt.test = *it->second;
    const auto label = j.at("label").get<std::string>();
    if (label == "safe") {
      lt.label = Label::Safe;
    } else if (label == "unsafe") {
      lt.label = Label::Unsafe;
    } else {
      throw Error("unknown label: " + label);
    }
    lt.obe_segments = j.at("obe_segments").get<std::vector<std::size_t>>();
    lt.sim_duration_s = j.at("sim_duration_s").get<double>();
    lt.wall_cost_s = j.at("wall_cost_s").get<double>();
    out.push_back(std::move(lt));
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace scissor
