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

#ifndef TREELAB_MODEL_HPP
#define TREELAB_MODEL_HPP

#include <variant>

#include "treelab/boosted.hpp"
#include "treelab/forest.hpp"
#include "treelab/tree.hpp"

namespace treelab {

enum class ModelKind { cart, random_forest, extra_trees, boosted };

std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

/// One base learner to fit: which algorithm plus its hyperparameters.
struct ModelSpec {
  ModelKind kind = ModelKind::random_forest;
  Hyperparams params;
  bool bootstrap = true;  // random_forest only
};

using Model = std::variant<TreeModel, ForestModel, BoostedModel>;

Model fit_model(const Table& train, const ModelSpec& spec,
                std::size_t n_threads = 0);

std::vector<double> predict_proba(const Model& model, const Table& table);

ModelKind model_kind(const Model& model);
const std::vector<std::string>& model_feature_names(const Model& model);

}  // namespace treelab

#endif  // TREELAB_MODEL_HPP
