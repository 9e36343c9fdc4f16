#pragma once

#include <vector>

#include "scissor/classifier.hpp"
#include "scissor/rng.hpp"

namespace scissor::tree_detail {

// When rng is non-null each node considers only mtry sampled features.
TreeModel build_tree(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels,
                     const std::vector<std::size_t>& row_indices, const Hyperparams& hyper,
                     Rng* rng, std::size_t mtry);

double tree_p_unsafe(const TreeModel& model, const std::vector<double>& values);

}  // namespace scissor::tree_detail
