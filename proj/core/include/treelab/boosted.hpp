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

#ifndef TREELAB_BOOSTED_HPP
#define TREELAB_BOOSTED_HPP

#include <cmath>

#include "treelab/tree.hpp"

namespace treelab {

/// Second-order (Newton) gradient-boosted trees for binary log-loss.
/// margin(x) = base_score + learning_rate * sum of tree outputs;
/// probability = logistic(margin).
struct BoostedModel {
  std::vector<Tree> trees;  // leaf values are additive score increments
  double learning_rate = 0.1;
  double base_score = 0.0;  // log-odds of the training prevalence
  double lambda_l2 = 1.0;
  double gamma = 0.0;
  std::vector<std::string> feature_names;
  Hyperparams params;
};

/// Fit with per-iteration gradients g = p - y and hessians h = p(1 - p),
/// second-order split gains, leaf weights -G/(H + lambda), and optional
/// seeded row subsampling. histogram_bins > 0 switches the split search to
/// train-quantile candidate thresholds.
BoostedModel fit_boosted(const Table& train, const Hyperparams& params);

std::vector<double> predict_margin(const BoostedModel& model,
                                   const Table& table);
std::vector<double> predict_proba(const BoostedModel& model,
                                  const Table& table);

inline double logistic(double margin) { return 1.0 / (1.0 + std::exp(-margin)); }

/// Mean binary cross-entropy of probabilities against 0/1 labels.
double log_loss(const std::vector<int>& labels,
                const std::vector<double>& probabilities);

}  // namespace treelab

#endif  // TREELAB_BOOSTED_HPP
