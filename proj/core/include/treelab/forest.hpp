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

#ifndef TREELAB_FOREST_HPP
#define TREELAB_FOREST_HPP

#include <functional>

#include "treelab/tree.hpp"

namespace treelab {

enum class ForestKind { random_forest, extra_trees };

/// Bagged classification trees. The probability for a row is the arithmetic
/// mean of the per-tree leaf class-1 fractions.
struct ForestModel {
  std::vector<Tree> trees;
  ForestKind kind = ForestKind::random_forest;
  bool bootstrap = true;
  std::size_t max_features = 0;  // resolved count actually used per split
  std::vector<std::string> feature_names;
  Hyperparams params;
};

/// Random forest: bootstrap row sampling plus max_features column
/// subsampling per split (0 = floor(sqrt(n_features))). Per-tree RNG streams
/// derive from (seed, tree index), so fitting is thread-count independent.
ForestModel fit_random_forest(const Table& train, const Hyperparams& params,
                              bool bootstrap = true, std::size_t n_threads = 0);

/// Extra trees: no bootstrap; each candidate feature gets one threshold
/// drawn uniformly in its node-local [min, max) range and the best candidate
/// wins.
ForestModel fit_extra_trees(const Table& train, const Hyperparams& params,
                            std::size_t n_threads = 0);

std::vector<double> predict_proba(const ForestModel& model, const Table& table);

/// Run fn(i) for i in [0, n) over a small thread pool; results must be
/// written to disjoint slots so the outcome is independent of scheduling.
void parallel_for(std::size_t n, std::size_t n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace treelab

#endif  // TREELAB_FOREST_HPP
