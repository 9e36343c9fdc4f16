#pragma once

#include <vector>

#include "scissor/classifier.hpp"

namespace scissor::forest_detail {

ForestModel train_forest(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& labels, const Hyperparams& hyper,
                         std::uint64_t seed);

double forest_p_unsafe(const ForestModel& forest, const std::vector<double>& values);

}  // namespace scissor::forest_detail
