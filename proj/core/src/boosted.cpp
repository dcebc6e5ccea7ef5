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

#include "treelab/boosted.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treelab/error.hpp"
#include "treelab/rng.hpp"

namespace treelab {
namespace {

struct NewtonGrower {
  const Table& data;
  const std::vector<double>& gradients;
  const std::vector<double>& hessians;
  const Hyperparams& params;
  const std::vector<std::vector<double>>* hist_edges;
  const std::vector<std::size_t>& candidate_features;
  Tree tree;

  int grow(std::vector<std::size_t>& rows, std::size_t depth) {
    double g = 0.0, h = 0.0;
    for (std::size_t r : rows) {
      g += gradients[r];
      h += hessians[r];
    }

    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes[index].cover = static_cast<double>(rows.size());
    tree.nodes[index].value = -g / (h + params.lambda_l2);

    if (depth >= params.max_depth) return index;

    SplitContext ctx;
    ctx.data = &data;
    ctx.rows = rows;
    ctx.gradients = gradients;
    ctx.hessians = hessians;
    ctx.mode = SplitMode::second_order;
    ctx.min_samples_leaf = params.min_samples_leaf;
    ctx.lambda_l2 = params.lambda_l2;
    ctx.gamma = params.gamma;
    ctx.hist_edges = hist_edges;

    auto split = best_split(ctx, candidate_features);
    if (!split) return index;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (data.at(r, split->feature) <= split->threshold ? left_rows : right_rows)
          .push_back(r);
    }
    tree.nodes[index].feature = static_cast<int>(split->feature);
    tree.nodes[index].threshold = split->threshold;
    tree.nodes[index].gain = split->gain;
    const int left = grow(left_rows, depth + 1);
    const int right = grow(right_rows, depth + 1);
    tree.nodes[index].left = left;
    tree.nodes[index].right = right;
    return index;
  }
};

}  // namespace

BoostedModel fit_boosted(const Table& train, const Hyperparams& params) {
  if (!train.has_labels()) {
    throw Error(Errc::no_labels, "fit_boosted requires labels");
  }
  auto counts = class_counts(train);
  if (counts.size() < 2) {
    throw Error(Errc::single_class, "fit_boosted requires both classes");
  }
  if (!(params.learning_rate > 0.0 && params.learning_rate <= 1.0)) {
    throw Error(Errc::config_error, "learning_rate must lie in (0,1]");
  }
  if (!(params.subsample_rows > 0.0 && params.subsample_rows <= 1.0)) {
    throw Error(Errc::config_error, "subsample_rows must lie in (0,1]");
  }

  const std::size_t n = train.n_rows();
  BoostedModel model;
  model.learning_rate = params.learning_rate;
  model.lambda_l2 = params.lambda_l2;
  model.gamma = params.gamma;
  model.feature_names = train.column_names();
  model.params = params;
  model.base_score = std::log(static_cast<double>(counts.at(1)) /
                              static_cast<double>(counts.at(0)));

  const auto edges = histogram_edges(train, params.histogram_bins);
  const auto* hist = params.histogram_bins > 0 ? &edges : nullptr;

  std::vector<double> margins(n, model.base_score);
  std::vector<double> gradients(n), hessians(n);
  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);

  model.trees.reserve(params.n_estimators);
  for (std::size_t iter = 0; iter < params.n_estimators; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      const double p = logistic(margins[i]);
      gradients[i] = p - static_cast<double>(train.labels()[i]);
      hessians[i] = p * (1.0 - p);
    }

    // Column subsample per iteration when max_features is set.
    std::vector<std::size_t> features(train.n_cols());
    std::iota(features.begin(), features.end(), 0);
    if (params.max_features > 0 && params.max_features < train.n_cols()) {
      Rng rng(derive_seed(params.seed, "boost_feat", iter));
      rng.shuffle(features);
      features.resize(params.max_features);
      std::sort(features.begin(), features.end());
    }

    std::vector<std::size_t> rows;
    if (params.subsample_rows < 1.0) {
      const auto take = static_cast<std::size_t>(std::floor(
          params.subsample_rows * static_cast<double>(n)));
      std::vector<std::size_t> pool = all_rows;
      Rng rng(derive_seed(params.seed, "boost_iter", iter));
      rng.shuffle(pool);
      pool.resize(std::max<std::size_t>(take, 1));
      std::sort(pool.begin(), pool.end());
      rows = std::move(pool);
    } else {
      rows = all_rows;
    }

    NewtonGrower grower{train, gradients, hessians, params, hist, features, {}};
    grower.grow(rows, 0);

    for (std::size_t i = 0; i < n; ++i) {
      margins[i] +=
          params.learning_rate * grower.tree.predict_row(train.row(i));
    }
    model.trees.push_back(std::move(grower.tree));
  }

  return model;
}

std::vector<double> predict_margin(const BoostedModel& model,
                                   const Table& table) {
  detail::check_schema(model.feature_names, table);
  std::vector<double> out(table.n_rows(), model.base_score);
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const auto row = table.row(r);
    double sum = 0.0;
    for (const auto& tree : model.trees) sum += tree.predict_row(row);
    out[r] += model.learning_rate * sum;
  }
  return out;
}

std::vector<double> predict_proba(const BoostedModel& model,
                                  const Table& table) {
  std::vector<double> out = predict_margin(model, table);
  for (double& v : out) v = logistic(v);
  return out;
}

double log_loss(const std::vector<int>& labels,
                const std::vector<double>& probabilities) {
  if (labels.size() != probabilities.size() || labels.empty()) {
    throw Error(Errc::length_mismatch, "log_loss needs matching nonempty input");
  }
  constexpr double kEps = 1e-15;
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(probabilities[i], kEps, 1.0 - kEps);
    sum += labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
  }
  return sum / static_cast<double>(labels.size());
}

}  // namespace treelab
