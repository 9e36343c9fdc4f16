#pragma once

#include <string>
#include <vector>

#include "scissor/dataset.hpp"

namespace scissor {

enum class RankMethod { InfoGain, Correlation };

// Selection thresholds: a feature counts as contributing when its score
// reaches the method's threshold.
inline constexpr double kInfoGainThreshold = 0.01;
inline constexpr double kCorrelationThreshold = 0.1;

struct FeatureRank {
  std::string feature;
  double score = 0.0;
  bool selected = false;
};

// Scores every feature against the label and returns them in descending
// score order (ties keep schema order). InfoGain uses the best binary
// threshold split, the same search the decision tree runs; Correlation is
// the absolute Pearson correlation with the 0/1 label.
// Throws SingleClass when a class is absent.
std::vector<FeatureRank> rank_features(const Dataset& d, RankMethod method);

}  // namespace scissor
