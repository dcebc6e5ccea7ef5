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

#include "treelab/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "treelab/error.hpp"
#include "treelab/rng.hpp"

namespace treelab {

void parallel_for(std::size_t n, std::size_t n_threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n_threads == 0) {
    n_threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  n_threads = std::min(n_threads, n);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(i);
      }
    });
  }
  for (auto& w : workers) w.join();
}

namespace {

std::size_t resolve_max_features(std::size_t requested, std::size_t n_features) {
  if (requested == 0) {
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::floor(std::sqrt(static_cast<double>(n_features)))));
  }
  return std::min(requested, n_features);
}

struct ForestGrower {
  const Table& data;
  const std::vector<double>& labels01;
  const Hyperparams& params;
  ForestKind kind;
  std::size_t max_features;
  Rng rng;
  Tree tree;

  // Evaluate a single fixed threshold (extra-trees style).
  std::optional<SplitCandidate> gain_at(std::span<const std::size_t> rows,
                                        std::size_t feature, double threshold,
                                        double parent_impurity, double c1_total) {
    double nl = 0.0, c1l = 0.0;
    for (std::size_t r : rows) {
      if (data.at(r, feature) <= threshold) {
        nl += 1.0;
        c1l += labels01[r];
      }
    }
    const double n = static_cast<double>(rows.size());
    const double msl = static_cast<double>(params.min_samples_leaf);
    if (nl < msl || n - nl < msl || nl == 0.0 || nl == n) return std::nullopt;
    const double imp_l = gini_impurity(nl - c1l, c1l);
    const double imp_r = gini_impurity((n - nl) - (c1_total - c1l), c1_total - c1l);
    const double gain = parent_impurity - (nl * imp_l + (n - nl) * imp_r) / n;
    return SplitCandidate{feature, threshold, gain};
  }

  std::optional<SplitCandidate> search(std::span<const std::size_t> rows,
                                       double c1_total) {
    const double n = static_cast<double>(rows.size());
    const double parent_impurity = gini_impurity(n - c1_total, c1_total);

    std::vector<std::size_t> order(data.n_cols());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    SplitContext ctx;
    ctx.data = &data;
    ctx.rows = rows;
    ctx.gradients = labels01;
    ctx.mode = SplitMode::gini;
    ctx.min_samples_leaf = params.min_samples_leaf;

    // Visit features in the shuffled order; past max_features, keep going
    // only until some valid split has been found.
    std::optional<SplitCandidate> best;
    auto consider = [&](const std::optional<SplitCandidate>& cand) {
      if (!cand) return;
      if (!best || cand->gain > best->gain ||
          (cand->gain == best->gain &&
           (cand->feature < best->feature ||
            (cand->feature == best->feature &&
             cand->threshold < best->threshold)))) {
        best = cand;
      }
    };

    for (std::size_t visited = 0; visited < order.size(); ++visited) {
      const std::size_t f = order[visited];
      if (kind == ForestKind::random_forest) {
        const std::size_t one[] = {f};
        consider(best_split(ctx, one));
      } else {
        double lo = data.at(rows[0], f), hi = lo;
        for (std::size_t r : rows) {
          lo = std::min(lo, data.at(r, f));
          hi = std::max(hi, data.at(r, f));
        }
        if (lo < hi) {
          consider(gain_at(rows, f, rng.next_in(lo, hi), parent_impurity,
                           c1_total));
        }
      }
      if (visited + 1 >= max_features && best) break;
    }
    return best;
  }

  int grow(std::vector<std::size_t>& rows, std::size_t depth) {
    const double n = static_cast<double>(rows.size());
    double c1 = 0.0;
    for (std::size_t r : rows) c1 += labels01[r];

    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes[index].cover = n;
    tree.nodes[index].value = c1 / n;

    if (depth >= params.max_depth || c1 == 0.0 || c1 == n ||
        rows.size() < 2 * params.min_samples_leaf || rows.size() < 2) {
      return index;
    }

    auto split = search(rows, c1);
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

ForestModel fit_forest(const Table& train, const Hyperparams& params,
                       ForestKind kind, bool bootstrap, std::size_t n_threads) {
  if (train.n_rows() < 2) {
    throw Error(Errc::empty_input, "forest fitting needs at least 2 rows");
  }
  if (!train.has_labels()) {
    throw Error(Errc::no_labels, "forest fitting requires labels");
  }
  if (class_counts(train).size() < 2) {
    throw Error(Errc::single_class, "forest fitting requires both classes");
  }

  std::vector<double> labels01(train.n_rows());
  for (std::size_t i = 0; i < train.n_rows(); ++i) {
    labels01[i] = static_cast<double>(train.labels()[i]);
  }

  ForestModel model;
  model.kind = kind;
  model.bootstrap = bootstrap;
  model.max_features = resolve_max_features(params.max_features, train.n_cols());
  model.feature_names = train.column_names();
  model.params = params;
  model.trees.resize(params.n_estimators);

  parallel_for(params.n_estimators, n_threads, [&](std::size_t t) {
    Rng rng(derive_seed(params.seed, "tree", t));
    std::vector<std::size_t> rows;
    rows.reserve(train.n_rows());
    if (bootstrap) {
      for (std::size_t i = 0; i < train.n_rows(); ++i) {
        rows.push_back(rng.next_below(train.n_rows()));
      }
    } else {
      rows.resize(train.n_rows());
      std::iota(rows.begin(), rows.end(), 0);
    }
    ForestGrower grower{train,
                        labels01,
                        params,
                        kind,
                        model.max_features,
                        std::move(rng),
                        {}};
    grower.grow(rows, 0);
    model.trees[t] = std::move(grower.tree);
  });

  return model;
}

}  // namespace

ForestModel fit_random_forest(const Table& train, const Hyperparams& params,
                              bool bootstrap, std::size_t n_threads) {
  return fit_forest(train, params, ForestKind::random_forest, bootstrap,
                    n_threads);
}

ForestModel fit_extra_trees(const Table& train, const Hyperparams& params,
                            std::size_t n_threads) {
  return fit_forest(train, params, ForestKind::extra_trees, false, n_threads);
}

std::vector<double> predict_proba(const ForestModel& model, const Table& table) {
  detail::check_schema(model.feature_names, table);
  if (model.trees.empty()) {
    throw Error(Errc::unfitted_model, "forest has no trees");
  }
  std::vector<double> out(table.n_rows(), 0.0);
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const auto row = table.row(r);
    double sum = 0.0;
    for (const auto& tree : model.trees) sum += tree.predict_row(row);
    out[r] = sum / static_cast<double>(model.trees.size());
  }
  return out;
}

}  // namespace treelab
