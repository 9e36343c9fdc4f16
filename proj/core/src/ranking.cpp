#include "scissor/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scissor/classifier.hpp"
#include "scissor/error.hpp"

namespace scissor {

namespace {

double pearson_abs(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return 0.0;
  return std::abs(sxy / std::sqrt(sxx * syy));
}

}  // namespace

std::vector<FeatureRank> rank_features(const Dataset& d, RankMethod method) {
  if (!d.has_both_classes()) throw SingleClass("ranking needs both classes present");

  std::vector<int> labels(d.rows.size());
  std::vector<double> labels_d(d.rows.size());
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    labels[i] = d.rows[i].label == Label::Unsafe ? 1 : 0;
    labels_d[i] = labels[i];
  }

  const double threshold =
      method == RankMethod::InfoGain ? kInfoGainThreshold : kCorrelationThreshold;
  std::vector<FeatureRank> ranks;
  ranks.reserve(d.schema.size());
  std::vector<double> column(d.rows.size());
  for (std::size_t j = 0; j < d.schema.size(); ++j) {
    for (std::size_t i = 0; i < d.rows.size(); ++i) column[i] = d.rows[i].values[j];
    double score = 0.0;
    if (method == RankMethod::InfoGain) {
      const SplitSearch s = best_split_for_feature(column, labels, 1);
      score = s.valid ? s.info_gain : 0.0;
    } else {
      score = pearson_abs(column, labels_d);
    }
    ranks.push_back({d.schema.names[j], score, score >= threshold});
  }

  std::stable_sort(ranks.begin(), ranks.end(),
                   [](const FeatureRank& a, const FeatureRank& b) { return a.score > b.score; });
  return ranks;
}

}  // namespace scissor
