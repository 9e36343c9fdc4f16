#pragma once

#include <vector>

#include "scissor/classifier.hpp"

namespace scissor::bayes_detail {

BayesModel train_bayes(const std::vector<std::vector<double>>& rows,
                       const std::vector<int>& labels,
                       const std::vector<FeatureKind>& kinds);

double bayes_p_unsafe(const BayesModel& m, const std::vector<FeatureKind>& kinds,
                      const std::vector<double>& values);

}  // namespace scissor::bayes_detail
