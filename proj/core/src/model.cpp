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

#include "treelab/model.hpp"

#include "treelab/error.hpp"

namespace treelab {

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::cart: return "cart";
    case ModelKind::random_forest: return "random_forest";
    case ModelKind::extra_trees: return "extra_trees";
    case ModelKind::boosted: return "boosted";
  }
  return "unknown";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "cart") return ModelKind::cart;
  if (name == "random_forest") return ModelKind::random_forest;
  if (name == "extra_trees") return ModelKind::extra_trees;
  if (name == "boosted") return ModelKind::boosted;
  throw Error(Errc::config_error, "unknown model kind '" + name + "'");
}

Model fit_model(const Table& train, const ModelSpec& spec,
                std::size_t n_threads) {
  switch (spec.kind) {
    case ModelKind::cart:
      return fit_tree(train, spec.params);
    case ModelKind::random_forest:
      return fit_random_forest(train, spec.params, spec.bootstrap, n_threads);
    case ModelKind::extra_trees:
      return fit_extra_trees(train, spec.params, n_threads);
    case ModelKind::boosted:
      return fit_boosted(train, spec.params);
  }
  throw Error(Errc::config_error, "invalid model kind");
}

std::vector<double> predict_proba(const Model& model, const Table& table) {
  return std::visit(
      [&](const auto& m) { return predict_proba(m, table); }, model);
}

ModelKind model_kind(const Model& model) {
  if (std::holds_alternative<TreeModel>(model)) return ModelKind::cart;
  if (std::holds_alternative<BoostedModel>(model)) return ModelKind::boosted;
  return std::get<ForestModel>(model).kind == ForestKind::random_forest
             ? ModelKind::random_forest
             : ModelKind::extra_trees;
}

const std::vector<std::string>& model_feature_names(const Model& model) {
  return std::visit(
      [](const auto& m) -> const std::vector<std::string>& {
        return m.feature_names;
      },
      model);
}

}  // namespace treelab
