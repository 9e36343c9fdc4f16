#include <cmath>
#include <numeric>

#include "scissor/classifier.hpp"
#include "scissor/rng.hpp"
#include "tree_internal.hpp"

namespace scissor::forest_detail {

ForestModel train_forest(const std::vector<std::vector<double>>& rows,
                         const std::vector<int>& labels, const Hyperparams& hyper,
                         std::uint64_t seed) {
  const std::size_t p = rows.empty() ? 0 : rows[0].size();
  const auto mtry = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(p))));

  ForestModel forest;
  forest.trees.reserve(static_cast<std::size_t>(hyper.n_trees));
  forest.bag_seeds.reserve(static_cast<std::size_t>(hyper.n_trees));
  for (int b = 0; b < hyper.n_trees; ++b) {
    const std::uint64_t tree_seed = derive_seed(seed, static_cast<std::uint64_t>(b));
    forest.bag_seeds.push_back(tree_seed);
    Rng rng(tree_seed);
    std::vector<std::size_t> bag(rows.size());
    for (auto& i : bag) i = static_cast<std::size_t>(rng.below(rows.size()));
    forest.trees.push_back(
        tree_detail::build_tree(rows, labels, bag, hyper, &rng, mtry));
  }
  return forest;
}

double forest_p_unsafe(const ForestModel& forest, const std::vector<double>& values) {
  if (forest.trees.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& tree : forest.trees) sum += tree_detail::tree_p_unsafe(tree, values);
  return sum / static_cast<double>(forest.trees.size());
}

}  // namespace scissor::forest_detail
