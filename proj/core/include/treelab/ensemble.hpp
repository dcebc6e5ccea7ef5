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

#ifndef TREELAB_ENSEMBLE_HPP
#define TREELAB_ENSEMBLE_HPP

#include "treelab/model.hpp"

namespace treelab {

enum class EnsembleStrategy { hard_vote, soft_vote, weighted_average, stacking };

std::string ensemble_strategy_name(EnsembleStrategy strategy);
EnsembleStrategy ensemble_strategy_from_name(const std::string& name);

/// Meta-model over fitted base learners. weights are present only for
/// weighted_average (normalized to sum 1), the meta-learner only for
/// stacking.
struct EnsembleModel {
  std::vector<std::string> member_names;
  std::vector<Model> members;
  EnsembleStrategy strategy = EnsembleStrategy::soft_vote;
  std::vector<double> weights;
  std::optional<BoostedModel> meta_learner;
  std::size_t oof_folds = 0;
};

/// Majority label per row; an exact tie goes to class 1 (favoring
/// sensitivity). member_labels[m][r] is member m's label for row r.
std::vector<int> hard_vote(const std::vector<std::vector<int>>& member_labels);

/// Unweighted row mean of member probabilities.
std::vector<double> soft_vote(const std::vector<std::vector<double>>& member_probs);

/// Row mean weighted by validation accuracy (normalized to sum 1).
std::vector<double> weighted_average(
    const std::vector<std::vector<double>>& member_probs,
    const std::vector<double>& validation_accuracies);

/// Stacking: meta-features are each base model's out-of-fold predicted
/// probabilities under a stratified k-fold of the training table; the
/// meta-learner is a boosted model fit on them; base models are refit on the
/// full table afterwards. Inference is meta(bases(x)).
EnsembleModel fit_stacking(const Table& train,
                           const std::vector<std::string>& base_names,
                           const std::vector<ModelSpec>& base_specs,
                           const Hyperparams& meta_params,
                           std::size_t oof_folds, std::uint64_t seed,
                           std::size_t n_threads = 0);

/// Voting ensemble over already-fitted members (weights only for
/// weighted_average).
EnsembleModel make_voting_ensemble(std::vector<std::string> member_names,
                                   std::vector<Model> members,
                                   EnsembleStrategy strategy,
                                   std::vector<double> validation_accuracies = {});

std::vector<double> predict_proba(const EnsembleModel& model, const Table& table);

/// Out-of-fold meta-feature matrix (column per member) used by stacking;
/// exposed so the out-of-fold discipline can be asserted directly.
std::vector<std::vector<double>> stacking_meta_features(
    const Table& train, const std::vector<ModelSpec>& base_specs,
    std::size_t oof_folds, std::uint64_t seed, std::size_t n_threads = 0);

struct SeedSweepResult {
  std::uint64_t best_seed = 0;
  std::vector<std::pair<std::uint64_t, double>> accuracies;  // per seed
};

/// Refit one model spec per seed, score on validation accuracy, and return
/// the argmax (ties to the lowest seed).
SeedSweepResult seed_sweep(const Table& train, const Table& validation,
                           const ModelSpec& spec,
                           const std::vector<std::uint64_t>& seeds,
                           std::size_t n_threads = 0);

}  // namespace treelab

#endif  // TREELAB_ENSEMBLE_HPP
