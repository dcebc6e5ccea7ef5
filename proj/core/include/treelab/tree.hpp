/*
 * Copyright 2026 The Treelab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TREELAB_TREE_HPP
#define TREELAB_TREE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treelab/table.hpp"

namespace treelab {

/// Flat tree node. Internal nodes route x[feature] <= threshold to `left`,
/// otherwise to `right`; leaves have left == right == -1 and carry `value`
/// (a class-1 fraction for classification trees, an additive score increment
/// for boosted trees). `cover` is the weight of training rows that reached
/// the node and `gain` the split's impurity decrease (gini trees) or
/// second-order gain (boosted trees).
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
  double cover = 0.0;
  double gain = 0.0;

  bool is_leaf() const { return left < 0; }

  bool operator==(const TreeNode&) const = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // preorder; nodes[0] is the root

  double predict_row(std::span<const double> row) const {
    int n = 0;
    while (!nodes[n].is_leaf()) {
      n = row[nodes[n].feature] <= nodes[n].threshold ? nodes[n].left
                                                      : nodes[n].right;
    }
    return nodes[n].value;
  }

  bool operator==(const Tree&) const = default;
};

struct Hyperparams {
  std::size_t n_estimators = 100;
  std::size_t max_depth = 6;
  std::size_t min_samples_leaf = 1;
  std::size_t max_features = 0;  // 0 = all (sqrt for forests)
  double learning_rate = 0.1;
  double subsample_rows = 1.0;
  double lambda_l2 = 1.0;
  double gamma = 0.0;
  std::size_t histogram_bins = 0;  // 0 = exact split search
  std::uint64_t seed = 0;

  static Hyperparams cart_defaults();
  static Hyperparams forest_defaults();
  static Hyperparams boosted_defaults();

  bool operator==(const Hyperparams&) const = default;
};

/// Single CART classification tree.
struct TreeModel {
  Tree tree;
  std::vector<std::string> feature_names;
  Hyperparams params;
};

/// Gini impurity 1 - p0^2 - p1^2 of a two-class count pair.
double gini_impurity(double count0, double count1);

enum class SplitMode { gini, second_order };

struct SplitCandidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Per-feature candidate thresholds for histogram mode: roughly
/// equal-frequency quantile cuts of the training column, each placed at the
/// midpoint of the adjacent distinct values. With bins >= the number of
/// distinct values this degenerates to every midpoint, i.e. exact search.
std::vector<std::vector<double>> histogram_edges(const Table& train,
                                                 std::size_t bins);

/// Inputs for one node's split search. In gini mode `gradients` holds the
/// 0/1 labels and `hessians` is unused; in second_order mode they are g and
/// h per row. `rows` indexes into the feature matrix (duplicates allowed for
/// bootstrap sampling).
struct SplitContext {
  const Table* data = nullptr;
  std::span<const std::size_t> rows;
  std::span<const double> gradients;
  std::span<const double> hessians;
  SplitMode mode = SplitMode::gini;
  std::size_t min_samples_leaf = 1;
  double lambda_l2 = 1.0;
  double gamma = 0.0;
  const std::vector<std::vector<double>>* hist_edges = nullptr;  // optional
};

/// Best split over the candidate features. Gini mode accepts the best
/// zero-gain split of an impure node (an impure node may need a free split
/// before a useful one, e.g. XOR-shaped data); second_order mode returns
/// nullopt unless the regularized gain is positive. Gain ties break toward
/// the lower feature index, then the lower threshold. Thresholds sit at the
/// midpoint between the closest row values on each side.
std::optional<SplitCandidate> best_split(
    const SplitContext& ctx, std::span<const std::size_t> candidate_features);

/// CART via greedy gini splits. Requires both classes present.
TreeModel fit_tree(const Table& train, const Hyperparams& params);

std::vector<double> predict_proba(const TreeModel& model, const Table& table);

namespace detail {

/// Shared schema guard for all predict paths.
void check_schema(const std::vector<std::string>& model_names,
                  const Table& table);

}  // namespace detail

}  // namespace treelab

#endif  // TREELAB_TREE_HPP
