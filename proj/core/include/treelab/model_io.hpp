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

#ifndef TREELAB_MODEL_IO_HPP
#define TREELAB_MODEL_IO_HPP

#include <string>

#include "treelab/ensemble.hpp"
#include "treelab/model.hpp"

namespace treelab {

/// Model JSON format v1: {"format_version", "kind", "params",
/// "feature_names", per-kind scalars, "trees": [{"nodes": [...]}]} with
/// nodes as flat arrays carrying child indices. Doubles serialize with
/// shortest-round-trip precision, so save -> load -> predict is bit-exact.
std::string model_to_json(const Model& model,
                          const std::string& train_fingerprint = "");
Model model_from_json(const std::string& text);

void save_model(const Model& model, const std::string& path,
                const std::string& train_fingerprint = "");
Model load_model(const std::string& path);

std::string ensemble_to_json(const EnsembleModel& model,
                             const std::string& train_fingerprint = "");
EnsembleModel ensemble_from_json(const std::string& text);

void save_ensemble(const EnsembleModel& model, const std::string& path,
                   const std::string& train_fingerprint = "");
EnsembleModel load_ensemble(const std::string& path);

/// True when the file holds an ensemble bundle rather than a single model.
bool is_ensemble_json(const std::string& text);

/// Fingerprint recorded at save time ("" when absent).
std::string saved_fingerprint(const std::string& text);

}  // namespace treelab

#endif  // TREELAB_MODEL_IO_HPP
