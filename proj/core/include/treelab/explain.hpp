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

#ifndef TREELAB_EXPLAIN_HPP
#define TREELAB_EXPLAIN_HPP

#include "treelab/model.hpp"

namespace treelab {

enum class ImportanceMethod { gini, permutation, shap_mean_abs };

std::string importance_method_name(ImportanceMethod method);

struct ImportanceRanking {
  ImportanceMethod method = ImportanceMethod::gini;
  std::vector<std::string> feature_names;
  std::vector<double> scores;         // aligned with feature_names
  std::vector<std::size_t> ordering;  // feature indices, descending score
};

/// Per-instance, per-feature SHAP values. Attributions explain the margin
/// (log-odds) of boosted models and the probability of trees and forests,
/// whichever space the model is additive in; `space` records which.
struct Attribution {
  double base_value = 0.0;
  std::vector<double> values;  // row-major, n_instances x n_features
  std::size_t n_features = 0;
  std::vector<std::string> feature_names;
  std::string space;  // "margin" or "probability"

  std::size_t n_instances() const {
    return n_features == 0 ? 0 : values.size() / n_features;
  }
  double at(std::size_t instance, std::size_t feature) const {
    return values[instance * n_features + feature];
  }
};

/// Impurity-decrease importance: per feature, the sum over nodes splitting
/// on it of cover-weighted impurity decrease (gini trees) or split gain
/// (boosted trees), averaged over trees and normalized to sum 1.
ImportanceRanking gini_importance(const Model& model);

enum class PermutationMetric { accuracy, auc };

/// Baseline metric minus the mean metric over n_repeats seeded within-column
/// shuffles; the model and all other columns are untouched, so a feature on
/// no root-to-leaf path scores exactly 0.
ImportanceRanking permutation_importance(const Model& model, const Table& table,
                                         PermutationMetric metric,
                                         std::size_t n_repeats,
                                         std::uint64_t seed);

/// Exact path-dependent TreeSHAP: Shapley values of the cover-weighted
/// conditional expectation each tree defines, summed over trees (scaled by
/// the learning rate for boosted models) or averaged (forests). base_value
/// is the cover-weighted expected model output.
Attribution tree_shap(const Model& model, const Table& instances,
                      std::size_t n_threads = 0);

/// Global ranking by mean |SHAP value| per feature.
ImportanceRanking shap_global_ranking(const Attribution& attribution);

/// Cover-weighted expected leaf value of a single tree.
double tree_expected_value(const Tree& tree);

}  // namespace treelab

#endif  // TREELAB_EXPLAIN_HPP
