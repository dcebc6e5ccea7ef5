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

#include "treelab/ensemble.hpp"

#include <algorithm>
#include <numeric>

#include "treelab/error.hpp"
#include "treelab/metrics.hpp"
#include "treelab/rng.hpp"
#include "treelab/split.hpp"

namespace treelab {

std::string ensemble_strategy_name(EnsembleStrategy strategy) {
  switch (strategy) {
    case EnsembleStrategy::hard_vote: return "hard_vote";
    case EnsembleStrategy::soft_vote: return "soft_vote";
    case EnsembleStrategy::weighted_average: return "weighted_average";
    case EnsembleStrategy::stacking: return "stacking";
  }
  return "unknown";
}

EnsembleStrategy ensemble_strategy_from_name(const std::string& name) {
  if (name == "hard_vote") return EnsembleStrategy::hard_vote;
  if (name == "soft_vote") return EnsembleStrategy::soft_vote;
  if (name == "weighted_average") return EnsembleStrategy::weighted_average;
  if (name == "stacking") return EnsembleStrategy::stacking;
  throw Error(Errc::config_error, "unknown ensemble strategy '" + name + "'");
}

namespace {

void check_members(std::size_t n_members) {
  if (n_members == 0) {
    throw Error(Errc::no_members, "ensemble needs at least one member");
  }
}

std::size_t common_row_count(const std::vector<std::vector<double>>& matrix) {
  check_members(matrix.size());
  const std::size_t n = matrix.front().size();
  for (const auto& row : matrix) {
    if (row.size() != n) {
      throw Error(Errc::length_mismatch, "member outputs differ in length");
    }
  }
  return n;
}

}  // namespace

std::vector<int> hard_vote(const std::vector<std::vector<int>>& member_labels) {
  check_members(member_labels.size());
  const std::size_t n = member_labels.front().size();
  for (const auto& row : member_labels) {
    if (row.size() != n) {
      throw Error(Errc::length_mismatch, "member outputs differ in length");
    }
  }
  std::vector<int> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t ones = 0;
    for (const auto& labels : member_labels) ones += labels[r] == 1;
    out[r] = 2 * ones >= member_labels.size() ? 1 : 0;
  }
  return out;
}

std::vector<double> soft_vote(const std::vector<std::vector<double>>& member_probs) {
  const std::size_t n = common_row_count(member_probs);
  std::vector<double> out(n, 0.0);
  for (const auto& probs : member_probs) {
    for (std::size_t r = 0; r < n; ++r) out[r] += probs[r];
  }
  for (double& v : out) v /= static_cast<double>(member_probs.size());
  return out;
}

std::vector<double> weighted_average(
    const std::vector<std::vector<double>>& member_probs,
    const std::vector<double>& validation_accuracies) {
  const std::size_t n = common_row_count(member_probs);
  if (validation_accuracies.size() != member_probs.size()) {
    throw Error(Errc::length_mismatch,
                "one accuracy per member is required");
  }
  double total = 0.0;
  for (double a : validation_accuracies) {
    if (!(a > 0.0)) {
      throw Error(Errc::bad_fraction, "accuracies must be positive");
    }
    total += a;
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 0; m < member_probs.size(); ++m) {
    const double w = validation_accuracies[m] / total;
    for (std::size_t r = 0; r < n; ++r) out[r] += w * member_probs[m][r];
  }
  return out;
}

std::vector<std::vector<double>> stacking_meta_features(
    const Table& train, const std::vector<ModelSpec>& base_specs,
    std::size_t oof_folds, std::uint64_t seed, std::size_t n_threads) {
  check_members(base_specs.size());
  if (oof_folds < 2) {
    throw Error(Errc::bad_fraction, "stacking needs at least 2 folds");
  }
  const auto folds =
      stratified_kfold(train, oof_folds, derive_seed(seed, "stack_oof"));

  std::vector<std::vector<double>> meta(
      base_specs.size(), std::vector<double>(train.n_rows(), 0.0));
  for (const auto& [fold_train, fold_held] : folds) {
    const Table fit_part = train.select_rows(fold_train);
    const Table held_part = train.select_rows(fold_held);
    for (std::size_t m = 0; m < base_specs.size(); ++m) {
      Model model = fit_model(fit_part, base_specs[m], n_threads);
      const auto probs = predict_proba(model, held_part);
      for (std::size_t i = 0; i < fold_held.size(); ++i) {
        meta[m][fold_held[i]] = probs[i];
      }
    }
  }
  return meta;
}

EnsembleModel fit_stacking(const Table& train,
                           const std::vector<std::string>& base_names,
                           const std::vector<ModelSpec>& base_specs,
                           const Hyperparams& meta_params,
                           std::size_t oof_folds, std::uint64_t seed,
                           std::size_t n_threads) {
  if (base_names.size() != base_specs.size()) {
    throw Error(Errc::length_mismatch, "one name per base spec is required");
  }
  auto meta = stacking_meta_features(train, base_specs, oof_folds, seed,
                                     n_threads);

  // Meta table: one column per member, rows aligned with train.
  std::vector<double> cells(train.n_rows() * base_specs.size());
  for (std::size_t r = 0; r < train.n_rows(); ++r) {
    for (std::size_t m = 0; m < base_specs.size(); ++m) {
      cells[r * base_specs.size() + m] = meta[m][r];
    }
  }
  Table meta_table(base_names, std::move(cells), train.labels());

  Hyperparams meta_p = meta_params;
  meta_p.seed = derive_seed(seed, "stack_meta");
  BoostedModel meta_model = fit_boosted(meta_table, meta_p);

  EnsembleModel ensemble;
  ensemble.member_names = base_names;
  ensemble.strategy = EnsembleStrategy::stacking;
  ensemble.meta_learner = std::move(meta_model);
  ensemble.oof_folds = oof_folds;
  for (std::size_t m = 0; m < base_specs.size(); ++m) {
    ModelSpec spec = base_specs[m];
    spec.params.seed = derive_seed(seed, "stack_member", m);
    ensemble.members.push_back(fit_model(train, spec, n_threads));
  }
  return ensemble;
}

EnsembleModel make_voting_ensemble(std::vector<std::string> member_names,
                                   std::vector<Model> members,
                                   EnsembleStrategy strategy,
                                   std::vector<double> validation_accuracies) {
  check_members(members.size());
  if (strategy == EnsembleStrategy::stacking) {
    throw Error(Errc::config_error, "stacking requires fit_stacking");
  }
  EnsembleModel ensemble;
  ensemble.member_names = std::move(member_names);
  ensemble.members = std::move(members);
  ensemble.strategy = strategy;
  if (strategy == EnsembleStrategy::weighted_average) {
    if (validation_accuracies.size() != ensemble.members.size()) {
      throw Error(Errc::length_mismatch,
                  "weighted_average needs one accuracy per member");
    }
    double total = 0.0;
    for (double a : validation_accuracies) {
      if (!(a > 0.0)) {
        throw Error(Errc::bad_fraction, "accuracies must be positive");
      }
      total += a;
    }
    ensemble.weights = std::move(validation_accuracies);
    for (double& w : ensemble.weights) w /= total;
  }
  return ensemble;
}

std::vector<double> predict_proba(const EnsembleModel& model, const Table& table) {
  check_members(model.members.size());

  std::vector<std::vector<double>> member_probs;
  member_probs.reserve(model.members.size());
  for (const auto& member : model.members) {
    member_probs.push_back(predict_proba(member, table));
  }

  switch (model.strategy) {
    case EnsembleStrategy::hard_vote: {
      std::vector<std::vector<int>> member_labels;
      member_labels.reserve(member_probs.size());
      for (const auto& probs : member_probs) {
        member_labels.push_back(labels_from_scores(probs));
      }
      const auto labels = hard_vote(member_labels);
      std::vector<double> out(labels.size());
      for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = static_cast<double>(labels[i]);
      }
      return out;
    }
    case EnsembleStrategy::soft_vote:
      return soft_vote(member_probs);
    case EnsembleStrategy::weighted_average: {
      const std::size_t n = common_row_count(member_probs);
      std::vector<double> out(n, 0.0);
      for (std::size_t m = 0; m < member_probs.size(); ++m) {
        for (std::size_t r = 0; r < n; ++r) {
          out[r] += model.weights[m] * member_probs[m][r];
        }
      }
      return out;
    }
    case EnsembleStrategy::stacking: {
      if (!model.meta_learner) {
        throw Error(Errc::unfitted_model, "stacking ensemble has no meta-learner");
      }
      std::vector<double> cells(table.n_rows() * member_probs.size());
      for (std::size_t r = 0; r < table.n_rows(); ++r) {
        for (std::size_t m = 0; m < member_probs.size(); ++m) {
          cells[r * member_probs.size() + m] = member_probs[m][r];
        }
      }
      Table meta_table(model.member_names, std::move(cells));
      return predict_proba(*model.meta_learner, meta_table);
    }
  }
  throw Error(Errc::config_error, "invalid ensemble strategy");
}

SeedSweepResult seed_sweep(const Table& train, const Table& validation,
                           const ModelSpec& spec,
                           const std::vector<std::uint64_t>& seeds,
                           std::size_t n_threads) {
  if (seeds.empty()) {
    throw Error(Errc::empty_input, "seed_sweep needs at least one seed");
  }
  if (!validation.has_labels()) {
    throw Error(Errc::no_labels, "seed_sweep scores on labeled validation data");
  }

  SeedSweepResult result;
  bool first = true;
  double best_accuracy = 0.0;
  for (std::uint64_t seed : seeds) {
    ModelSpec candidate = spec;
    candidate.params.seed = seed;
    Model model = fit_model(train, candidate, n_threads);
    const auto probs = predict_proba(model, validation);
    const auto counts = confusion(validation.labels(), labels_from_scores(probs));
    const double accuracy = static_cast<double>(counts.tp + counts.tn) /
                            static_cast<double>(counts.total());
    result.accuracies.emplace_back(seed, accuracy);
    if (first || accuracy > best_accuracy ||
        (accuracy == best_accuracy && seed < result.best_seed)) {
      best_accuracy = accuracy;
      result.best_seed = seed;
      first = false;
    }
  }
  return result;
}

}  // namespace treelab
