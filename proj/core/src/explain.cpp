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

#include "treelab/explain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treelab/error.hpp"
#include "treelab/metrics.hpp"
#include "treelab/rng.hpp"

namespace treelab {

std::string importance_method_name(ImportanceMethod method) {
  switch (method) {
    case ImportanceMethod::gini: return "gini";
    case ImportanceMethod::permutation: return "permutation";
    case ImportanceMethod::shap_mean_abs: return "shap_mean_abs";
  }
  return "unknown";
}

namespace {

std::vector<std::size_t> descending_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  return order;
}

struct TreeView {
  std::vector<Tree> storage;                // single-tree models only
  const std::vector<Tree>* external = nullptr;
  double scale = 1.0;        // 1/n_trees for forests, learning_rate for boosted
  double base_offset = 0.0;  // base_score for boosted
  std::string space;

  const std::vector<Tree>& trees() const {
    return external ? *external : storage;
  }
};

TreeView view_of(const Model& model) {
  TreeView v;
  if (const auto* tree = std::get_if<TreeModel>(&model)) {
    v.storage = {tree->tree};
    v.space = "probability";
  } else if (const auto* forest = std::get_if<ForestModel>(&model)) {
    v.external = &forest->trees;
    v.scale = forest->trees.empty()
                  ? 1.0
                  : 1.0 / static_cast<double>(forest->trees.size());
    v.space = "probability";
  } else {
    const auto& boosted = std::get<BoostedModel>(model);
    v.external = &boosted.trees;
    v.scale = boosted.learning_rate;
    v.base_offset = boosted.base_score;
    v.space = "margin";
  }
  return v;
}

}  // namespace

double tree_expected_value(const Tree& tree) {
  // Postorder accumulation of cover-weighted leaf averages.
  std::vector<double> expected(tree.nodes.size(), 0.0);
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const TreeNode& node = tree.nodes[i];
    if (node.is_leaf()) {
      expected[i] = node.value;
    } else {
      const double cl = tree.nodes[node.left].cover;
      const double cr = tree.nodes[node.right].cover;
      expected[i] =
          (cl * expected[node.left] + cr * expected[node.right]) / (cl + cr);
    }
  }
  return expected.empty() ? 0.0 : expected[0];
}

ImportanceRanking gini_importance(const Model& model) {
  const TreeView view = view_of(model);
  if (view.trees().empty()) {
    throw Error(Errc::unfitted_model, "model has no trees");
  }
  const bool boosted = std::holds_alternative<BoostedModel>(model);
  const auto& names = model_feature_names(model);

  ImportanceRanking ranking;
  ranking.method = ImportanceMethod::gini;
  ranking.feature_names = names;
  ranking.scores.assign(names.size(), 0.0);

  for (const Tree& tree : view.trees()) {
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) continue;
      const double contribution =
          boosted ? node.gain : node.cover * node.gain;
      ranking.scores[static_cast<std::size_t>(node.feature)] += contribution;
    }
  }
  const double n_trees = static_cast<double>(view.trees().size());
  for (double& s : ranking.scores) s /= n_trees;

  double total = std::accumulate(ranking.scores.begin(), ranking.scores.end(), 0.0);
  if (total > 0.0) {
    for (double& s : ranking.scores) s /= total;
  }
  ranking.ordering = descending_order(ranking.scores);
  return ranking;
}

namespace {

double metric_value(const std::vector<int>& labels,
                    const std::vector<double>& scores,
                    PermutationMetric metric) {
  if (metric == PermutationMetric::accuracy) {
    const auto counts = confusion(labels, labels_from_scores(scores));
    return static_cast<double>(counts.tp + counts.tn) /
           static_cast<double>(counts.total());
  }
  return roc_auc(labels, scores).first;
}

}  // namespace

ImportanceRanking permutation_importance(const Model& model, const Table& table,
                                         PermutationMetric metric,
                                         std::size_t n_repeats,
                                         std::uint64_t seed) {
  if (!table.has_labels()) {
    throw Error(Errc::no_labels, "permutation importance requires labels");
  }
  if (n_repeats == 0) {
    throw Error(Errc::config_error, "n_repeats must be at least 1");
  }

  const double baseline =
      metric_value(table.labels(), predict_proba(model, table), metric);

  ImportanceRanking ranking;
  ranking.method = ImportanceMethod::permutation;
  ranking.feature_names = table.column_names();
  ranking.scores.assign(table.n_cols(), 0.0);

  for (std::size_t f = 0; f < table.n_cols(); ++f) {
    const std::uint64_t feature_seed = derive_seed(seed, "perm_feature", f);
    double drop_sum = 0.0;
    for (std::size_t rep = 0; rep < n_repeats; ++rep) {
      std::vector<double> column = table.column(f);
      Rng rng(derive_seed(feature_seed, "perm_repeat", rep));
      rng.shuffle(column);

      std::vector<double> cells = table.cells();
      for (std::size_t r = 0; r < table.n_rows(); ++r) {
        cells[r * table.n_cols() + f] = column[r];
      }
      Table permuted(table.column_names(), std::move(cells), table.labels());
      drop_sum += baseline - metric_value(table.labels(),
                                          predict_proba(model, permuted), metric);
    }
    ranking.scores[f] = drop_sum / static_cast<double>(n_repeats);
  }
  ranking.ordering = descending_order(ranking.scores);
  return ranking;
}

namespace {

// Path-dependent TreeSHAP. The path records, per feature split on so far,
// the fraction of covers that flow down when the feature is excluded
// (zero_fraction), whether the instance itself follows the path
// (one_fraction), and the permutation weight of each prefix size (pweight).
struct PathElement {
  int feature = -1;
  double zero_fraction = 0.0;
  double one_fraction = 0.0;
  double pweight = 0.0;
};

void extend_path(PathElement* path, int depth, double zero_fraction,
                 double one_fraction, int feature) {
  path[depth] = {feature, zero_fraction, one_fraction,
                 depth == 0 ? 1.0 : 0.0};
  for (int i = depth - 1; i >= 0; --i) {
    path[i + 1].pweight += one_fraction * path[i].pweight *
                           static_cast<double>(i + 1) /
                           static_cast<double>(depth + 1);
    path[i].pweight = zero_fraction * path[i].pweight *
                      static_cast<double>(depth - i) /
                      static_cast<double>(depth + 1);
  }
}

void unwind_path(PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;

  for (int i = depth - 1; i >= 0; --i) {
    if (one_fraction != 0.0) {
      const double tmp = path[i].pweight;
      path[i].pweight = next_one_portion * static_cast<double>(depth + 1) /
                        (static_cast<double>(i + 1) * one_fraction);
      next_one_portion = tmp - path[i].pweight * zero_fraction *
                                   static_cast<double>(depth - i) /
                                   static_cast<double>(depth + 1);
    } else {
      path[i].pweight = path[i].pweight * static_cast<double>(depth + 1) /
                        (zero_fraction * static_cast<double>(depth - i));
    }
  }
  for (int i = index; i < depth; ++i) {
    path[i].feature = path[i + 1].feature;
    path[i].zero_fraction = path[i + 1].zero_fraction;
    path[i].one_fraction = path[i + 1].one_fraction;
  }
}

double unwound_path_sum(const PathElement* path, int depth, int index) {
  const double one_fraction = path[index].one_fraction;
  const double zero_fraction = path[index].zero_fraction;
  double next_one_portion = path[depth].pweight;
  double total = 0.0;

  if (one_fraction != 0.0) {
    for (int i = depth - 1; i >= 0; --i) {
      const double tmp =
          next_one_portion / (static_cast<double>(i + 1) * one_fraction);
      total += tmp;
      next_one_portion =
          path[i].pweight - tmp * zero_fraction * static_cast<double>(depth - i);
    }
  } else {
    for (int i = depth - 1; i >= 0; --i) {
      total +=
          path[i].pweight / (zero_fraction * static_cast<double>(depth - i));
    }
  }
  return total * static_cast<double>(depth + 1);
}

void shap_recurse(const Tree& tree, std::span<const double> x, double* phi,
                  int node_index, int depth, PathElement* parent_path,
                  double parent_zero_fraction, double parent_one_fraction,
                  int parent_feature) {
  PathElement* path = parent_path + depth + 1;
  std::copy(parent_path, parent_path + depth + 1, path);
  extend_path(path, depth, parent_zero_fraction, parent_one_fraction,
              parent_feature);

  const TreeNode& node = tree.nodes[node_index];
  if (node.is_leaf()) {
    for (int i = 1; i <= depth; ++i) {
      const double w = unwound_path_sum(path, depth, i);
      const PathElement& el = path[i];
      phi[el.feature] +=
          w * (el.one_fraction - el.zero_fraction) * node.value;
    }
    return;
  }

  const int hot = x[node.feature] <= node.threshold ? node.left : node.right;
  const int cold = hot == node.left ? node.right : node.left;
  const double hot_zero_fraction = tree.nodes[hot].cover / node.cover;
  const double cold_zero_fraction = tree.nodes[cold].cover / node.cover;
  double incoming_zero_fraction = 1.0;
  double incoming_one_fraction = 1.0;

  // A revisited feature gets its earlier extension undone so this node's
  // split can replace it.
  int path_index = 0;
  for (; path_index <= depth; ++path_index) {
    if (path[path_index].feature == node.feature) break;
  }
  if (path_index != depth + 1) {
    incoming_zero_fraction = path[path_index].zero_fraction;
    incoming_one_fraction = path[path_index].one_fraction;
    unwind_path(path, depth, path_index);
    depth -= 1;
  }

  shap_recurse(tree, x, phi, hot, depth + 1, path,
               hot_zero_fraction * incoming_zero_fraction,
               incoming_one_fraction, node.feature);
  shap_recurse(tree, x, phi, cold, depth + 1, path,
               cold_zero_fraction * incoming_zero_fraction, 0.0, node.feature);
}

int tree_depth(const Tree& tree, int node, int depth) {
  const TreeNode& n = tree.nodes[node];
  if (n.is_leaf()) return depth;
  return std::max(tree_depth(tree, n.left, depth + 1),
                  tree_depth(tree, n.right, depth + 1));
}

}  // namespace

Attribution tree_shap(const Model& model, const Table& instances,
                      std::size_t n_threads) {
  const TreeView view = view_of(model);
  detail::check_schema(model_feature_names(model), instances);
  if (view.trees().empty()) {
    throw Error(Errc::unfitted_model, "model has no trees");
  }

  int max_depth = 0;
  for (const Tree& tree : view.trees()) {
    for (const TreeNode& node : tree.nodes) {
      if (!node.is_leaf()) {
        if (!(tree.nodes[node.left].cover > 0.0) ||
            !(tree.nodes[node.right].cover > 0.0)) {
          throw Error(Errc::missing_cover,
                      "every node needs a positive recorded cover");
        }
      }
    }
    max_depth = std::max(max_depth, tree_depth(tree, 0, 0));
  }

  Attribution out;
  out.n_features = instances.n_cols();
  out.feature_names = instances.column_names();
  out.space = view.space;
  out.values.assign(instances.n_rows() * instances.n_cols(), 0.0);

  double expected_sum = 0.0;
  for (const Tree& tree : view.trees()) expected_sum += tree_expected_value(tree);
  out.base_value = view.base_offset + view.scale * expected_sum;

  const std::size_t arena_size =
      static_cast<std::size_t>((max_depth + 3) * (max_depth + 4)) / 2 + 4;
  const std::vector<Tree>& trees = view.trees();
  const double scale = view.scale;

  parallel_for(instances.n_rows(), n_threads, [&](std::size_t r) {
    std::vector<PathElement> arena(arena_size);
    std::vector<double> phi(instances.n_cols(), 0.0);
    const auto row = instances.row(r);
    for (const Tree& tree : trees) {
      shap_recurse(tree, row, phi.data(), 0, 0, arena.data(), 1.0, 1.0, -1);
    }
    double* dest = out.values.data() + r * instances.n_cols();
    for (std::size_t f = 0; f < instances.n_cols(); ++f) {
      dest[f] = scale * phi[f];
    }
  });

  return out;
}

ImportanceRanking shap_global_ranking(const Attribution& attribution) {
  if (attribution.n_instances() == 0) {
    throw Error(Errc::empty_attribution, "attribution has no instances");
  }
  ImportanceRanking ranking;
  ranking.method = ImportanceMethod::shap_mean_abs;
  ranking.feature_names = attribution.feature_names;
  ranking.scores.assign(attribution.n_features, 0.0);
  for (std::size_t i = 0; i < attribution.n_instances(); ++i) {
    for (std::size_t f = 0; f < attribution.n_features; ++f) {
      ranking.scores[f] += std::abs(attribution.at(i, f));
    }
  }
  for (double& s : ranking.scores) {
    s /= static_cast<double>(attribution.n_instances());
  }
  ranking.ordering = descending_order(ranking.scores);
  return ranking;
}

}  // namespace treelab
