#pragma once

#include <string>
#include <vector>

#include "scissor/road.hpp"

namespace scissor {

// Test cases serialize as
//   [{"id": ..., "segments": [{"kind", "angle_deg", "radius_m", "length_m",
//     "friction"}, ...]}, ...]
// Numbers round-trip bit-exactly (shortest representation that parses back
// to the same double).
std::string tests_to_json(const std::vector<TestCase>& tests);
std::vector<TestCase> tests_from_json(const std::string& json_text);

// Labeled results serialize as
//   [{"test_id", "label", "obe_segments", "sim_duration_s", "wall_cost_s"}, ...]
// The geometry is not embedded; consumers join on test_id.
std::string labels_to_json(const std::vector<LabeledTest>& labeled);

// Reconstructs LabeledTest values by joining label records against the given
// test cases. Throws Error when a test_id has no matching test.
std::vector<LabeledTest> labels_from_json(const std::string& json_text,
                                          const std::vector<TestCase>& tests);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace scissor
