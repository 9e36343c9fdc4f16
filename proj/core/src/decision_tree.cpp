#include <algorithm>
#include <cmath>
#include <numeric>

#include "scissor/classifier.hpp"
#include "scissor/rng.hpp"
#include "tree_internal.hpp"

namespace scissor {

double entropy(std::size_t n_safe, std::size_t n_unsafe) {
  const std::size_t n = n_safe + n_unsafe;
  if (n == 0 || n_safe == 0 || n_unsafe == 0) return 0.0;
  const double ps = static_cast<double>(n_safe) / static_cast<double>(n);
  const double pu = 1.0 - ps;
  return -(ps * std::log2(ps) + pu * std::log2(pu));
}

SplitSearch best_split_for_feature(const std::vector<double>& values,
                                   const std::vector<int>& labels, std::size_t min_leaf) {
  SplitSearch best;
  const std::size_t n = values.size();
  if (n < 2 * min_leaf) return best;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::size_t total_unsafe = 0;
  for (int y : labels) total_unsafe += static_cast<std::size_t>(y);
  const std::size_t total_safe = n - total_unsafe;
  const double parent = entropy(total_safe, total_unsafe);

  std::size_t left_unsafe = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    left_unsafe += static_cast<std::size_t>(labels[order[i]]);
    const double lo = values[order[i]];
    const double hi = values[order[i + 1]];
    if (!(hi > lo)) continue;  // only between distinct values
    const std::size_t n_left = i + 1;
    const std::size_t n_right = n - n_left;
    if (n_left < min_leaf || n_right < min_leaf) continue;

    const std::size_t left_safe = n_left - left_unsafe;
    const std::size_t right_unsafe = total_unsafe - left_unsafe;
    const std::size_t right_safe = n_right - right_unsafe;
    const double wl = static_cast<double>(n_left) / static_cast<double>(n);
    const double wr = 1.0 - wl;
    const double gain =
        parent - wl * entropy(left_safe, left_unsafe) - wr * entropy(right_safe, right_unsafe);
    if (gain <= 1e-12) continue;
    const double split_info = -(wl * std::log2(wl) + wr * std::log2(wr));
    if (!(split_info > 0.0)) continue;
    const double gain_ratio = gain / split_info;
    if (!best.valid || gain_ratio > best.gain_ratio) {
      best.valid = true;
      best.threshold = 0.5 * (lo + hi);
      best.info_gain = gain;
      best.gain_ratio = gain_ratio;
    }
  }
  return best;
}

namespace tree_detail {

// Shared by the plain tree and the forest: when `rng` is given, each node
// considers only `mtry` sampled features.
TreeModel build_tree(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels,
                     const std::vector<std::size_t>& row_indices,
                     const Hyperparams& hyper, Rng* rng, std::size_t mtry) {
  TreeModel model;
  const std::size_t p = rows.empty() ? 0 : rows[0].size();

  struct Frame {
    std::vector<std::size_t> idx;
    std::int32_t node;
  };

  auto make_leaf = [&](TreeNode& node, const std::vector<std::size_t>& idx) {
    std::size_t unsafe = 0;
    for (auto i : idx) unsafe += static_cast<std::size_t>(labels[i]);
    node.feature = -1;
    node.p_unsafe = idx.empty() ? 0.0
                                : static_cast<double>(unsafe) / static_cast<double>(idx.size());
    node.rows = static_cast<std::uint32_t>(idx.size());
  };

  std::vector<Frame> stack;
  model.nodes.emplace_back();
  stack.push_back({row_indices, 0});

  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    TreeNode& node = model.nodes[static_cast<std::size_t>(frame.node)];
    node.rows = static_cast<std::uint32_t>(frame.idx.size());

    std::size_t unsafe = 0;
    for (auto i : frame.idx) unsafe += static_cast<std::size_t>(labels[i]);
    const bool pure = unsafe == 0 || unsafe == frame.idx.size();
    if (pure || frame.idx.size() < 2 * static_cast<std::size_t>(hyper.min_leaf)) {
      make_leaf(node, frame.idx);
      continue;
    }

    std::vector<std::size_t> candidates(p);
    std::iota(candidates.begin(), candidates.end(), 0);
    if (rng && mtry < p) {
      // Partial Fisher-Yates: first mtry entries are the sample.
      for (std::size_t i = 0; i < mtry; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng->below(p - i));
        std::swap(candidates[i], candidates[j]);
      }
      candidates.resize(mtry);
      std::sort(candidates.begin(), candidates.end());
    }

    std::int32_t best_feature = -1;
    SplitSearch best;
    std::vector<double> column(frame.idx.size());
    std::vector<int> column_labels(frame.idx.size());
    for (std::size_t k = 0; k < frame.idx.size(); ++k) {
      column_labels[k] = labels[frame.idx[k]];
    }
    for (std::size_t f : candidates) {
      for (std::size_t k = 0; k < frame.idx.size(); ++k) column[k] = rows[frame.idx[k]][f];
      const SplitSearch s =
          best_split_for_feature(column, column_labels,
                                 static_cast<std::size_t>(hyper.min_leaf));
      if (s.valid && (best_feature < 0 || s.gain_ratio > best.gain_ratio)) {
        best = s;
        best_feature = static_cast<std::int32_t>(f);
      }
    }
    if (best_feature < 0) {
      make_leaf(node, frame.idx);
      continue;
    }

    std::vector<std::size_t> left_idx, right_idx;
    for (auto i : frame.idx) {
      (rows[i][static_cast<std::size_t>(best_feature)] <= best.threshold ? left_idx
                                                                         : right_idx)
          .push_back(i);
    }

    const auto left_node = static_cast<std::int32_t>(model.nodes.size());
    const auto right_node = left_node + 1;
    model.nodes.emplace_back();
    model.nodes.emplace_back();
    // Re-fetch: emplace_back may have reallocated the node storage.
    TreeNode& split_node = model.nodes[static_cast<std::size_t>(frame.node)];
    split_node.feature = best_feature;
    split_node.threshold = best.threshold;
    split_node.left = left_node;
    split_node.right = right_node;
    // Right pushed first so the left subtree is processed first.
    stack.push_back({std::move(right_idx), right_node});
    stack.push_back({std::move(left_idx), left_node});
  }
  return model;
}

double tree_p_unsafe(const TreeModel& model, const std::vector<double>& values) {
  std::int32_t node = 0;
  while (model.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& n = model.nodes[static_cast<std::size_t>(node)];
    node = values[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return model.nodes[static_cast<std::size_t>(node)].p_unsafe;
}

}  // namespace tree_detail

TreeModel train_tree(const std::vector<std::vector<double>>& rows,
                     const std::vector<int>& labels, const Hyperparams& hyper) {
  std::vector<std::size_t> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  return tree_detail::build_tree(rows, labels, all, hyper, nullptr, rows.empty() ? 0 : rows[0].size());
}

}  // namespace scissor
