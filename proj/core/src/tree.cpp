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

#include "treelab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "treelab/error.hpp"

namespace treelab {

Hyperparams Hyperparams::cart_defaults() {
  Hyperparams p;
  p.n_estimators = 1;
  p.max_depth = 12;
  p.min_samples_leaf = 1;
  return p;
}

Hyperparams Hyperparams::forest_defaults() {
  Hyperparams p;
  p.n_estimators = 300;
  p.max_depth = 12;
  p.min_samples_leaf = 1;
  p.max_features = 0;  // sqrt(n_features)
  return p;
}

Hyperparams Hyperparams::boosted_defaults() {
  Hyperparams p;
  p.n_estimators = 200;
  p.max_depth = 4;
  p.min_samples_leaf = 20;
  p.learning_rate = 0.1;
  p.lambda_l2 = 1.0;
  p.gamma = 0.0;
  return p;
}

double gini_impurity(double count0, double count1) {
  const double total = count0 + count1;
  if (total <= 0.0) {
    throw Error(Errc::empty_node, "gini impurity of an empty node");
  }
  const double p0 = count0 / total;
  const double p1 = count1 / total;
  return 1.0 - p0 * p0 - p1 * p1;
}

std::vector<std::vector<double>> histogram_edges(const Table& train,
                                                 std::size_t bins) {
  std::vector<std::vector<double>> edges(train.n_cols());
  if (bins == 0) return edges;
  const std::size_t n = train.n_rows();

  for (std::size_t f = 0; f < train.n_cols(); ++f) {
    std::vector<double> values = train.column(f);
    std::sort(values.begin(), values.end());

    // Boundaries between runs of equal values: (position of last row of the
    // run, midpoint to the next distinct value).
    std::vector<std::pair<std::size_t, double>> boundaries;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (values[i] != values[i + 1]) {
        boundaries.emplace_back(i + 1, 0.5 * (values[i] + values[i + 1]));
      }
    }

    if (boundaries.size() + 1 <= bins) {
      // Enough bins for every distinct value: identical to exact search.
      for (const auto& [count, mid] : boundaries) edges[f].push_back(mid);
      continue;
    }

    // Equal-frequency cuts: for each target count, the first boundary at or
    // past it; duplicates collapse.
    std::size_t b = 0;
    for (std::size_t k = 1; k < bins; ++k) {
      const double target =
          static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(bins);
      while (b < boundaries.size() &&
             static_cast<double>(boundaries[b].first) < target) {
        ++b;
      }
      if (b == boundaries.size()) break;
      if (edges[f].empty() || edges[f].back() != boundaries[b].second) {
        edges[f].push_back(boundaries[b].second);
      }
    }
  }
  return edges;
}

namespace {

struct BestTracker {
  std::optional<SplitCandidate> best;

  void consider(std::size_t feature, double threshold, double gain) {
    if (!best || gain > best->gain ||
        (gain == best->gain &&
         (feature < best->feature ||
          (feature == best->feature && threshold < best->threshold)))) {
      best = SplitCandidate{feature, threshold, gain};
    }
  }
};

struct Totals {
  double g = 0.0;
  double h = 0.0;
  double n = 0.0;
};

double split_gain(const SplitContext& ctx, const Totals& total, double gl,
                  double hl, double nl, double parent_impurity) {
  if (ctx.mode == SplitMode::gini) {
    // gl counts class-1 rows on the left.
    const double c1l = gl, c0l = nl - gl;
    const double c1r = total.g - gl, c0r = (total.n - nl) - c1r;
    const double imp_l = gini_impurity(c0l, c1l);
    const double imp_r = gini_impurity(c0r, c1r);
    return parent_impurity -
           (nl * imp_l + (total.n - nl) * imp_r) / total.n;
  }
  const double gr = total.g - gl;
  const double hr = total.h - hl;
  const double lam = ctx.lambda_l2;
  return 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) -
                total.g * total.g / (total.h + lam)) -
         ctx.gamma;
}

void scan_feature(const SplitContext& ctx, std::size_t feature,
                  const Totals& total, double parent_impurity,
                  BestTracker& tracker) {
  const std::size_t n = ctx.rows.size();
  std::vector<std::pair<double, std::size_t>> sorted;
  sorted.reserve(n);
  for (std::size_t row : ctx.rows) {
    sorted.emplace_back(ctx.data->at(row, feature), row);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const bool second_order = ctx.mode == SplitMode::second_order;
  const double msl = static_cast<double>(ctx.min_samples_leaf);

  auto evaluate = [&](std::size_t left_count, double gl, double hl) {
    const double nl = static_cast<double>(left_count);
    if (nl < msl || total.n - nl < msl) return;
    const double gain = split_gain(ctx, total, gl, hl, nl, parent_impurity);
    if (second_order && gain <= 0.0) return;
    const double lv = sorted[left_count - 1].first;
    const double rv = sorted[left_count].first;
    double threshold = 0.5 * (lv + rv);
    if (!(threshold < rv)) threshold = lv;  // midpoint collapsed onto rv
    tracker.consider(feature, threshold, gain);
  };

  double gl = 0.0, hl = 0.0;
  if (ctx.hist_edges == nullptr || ctx.hist_edges->empty()) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t row = sorted[i].second;
      gl += ctx.gradients[row];
      if (second_order) hl += ctx.hessians[row];
      if (sorted[i].first != sorted[i + 1].first) {
        evaluate(i + 1, gl, hl);
      }
    }
  } else {
    const auto& edges = (*ctx.hist_edges)[feature];
    std::size_t i = 0;
    for (double edge : edges) {
      bool moved = false;
      while (i < n && sorted[i].first <= edge) {
        const std::size_t row = sorted[i].second;
        gl += ctx.gradients[row];
        if (second_order) hl += ctx.hessians[row];
        ++i;
        moved = true;
      }
      if (moved && i > 0 && i < n) {
        evaluate(i, gl, hl);
      }
    }
  }
}

}  // namespace

std::optional<SplitCandidate> best_split(
    const SplitContext& ctx, std::span<const std::size_t> candidate_features) {
  const std::size_t n = ctx.rows.size();
  if (n < 2 * ctx.min_samples_leaf || n < 2) return std::nullopt;

  Totals total;
  total.n = static_cast<double>(n);
  for (std::size_t row : ctx.rows) {
    total.g += ctx.gradients[row];
    if (ctx.mode == SplitMode::second_order) total.h += ctx.hessians[row];
  }

  double parent_impurity = 0.0;
  if (ctx.mode == SplitMode::gini) {
    const double c1 = total.g;
    const double c0 = total.n - c1;
    if (c0 == 0.0 || c1 == 0.0) return std::nullopt;  // pure node
    parent_impurity = gini_impurity(c0, c1);
  }

  BestTracker tracker;
  for (std::size_t f : candidate_features) {
    scan_feature(ctx, f, total, parent_impurity, tracker);
  }
  return tracker.best;
}

namespace {

struct GiniGrower {
  const Table& data;
  const std::vector<double>& labels01;
  const Hyperparams& params;
  Tree tree;

  int grow(std::vector<std::size_t>& rows, std::size_t depth) {
    const double n = static_cast<double>(rows.size());
    double c1 = 0.0;
    for (std::size_t r : rows) c1 += labels01[r];

    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes[index].cover = n;
    tree.nodes[index].value = c1 / n;

    if (depth >= params.max_depth || c1 == 0.0 || c1 == n) return index;

    SplitContext ctx;
    ctx.data = &data;
    ctx.rows = rows;
    ctx.gradients = labels01;
    ctx.mode = SplitMode::gini;
    ctx.min_samples_leaf = params.min_samples_leaf;

    std::vector<std::size_t> all_features(data.n_cols());
    std::iota(all_features.begin(), all_features.end(), 0);
    auto split = best_split(ctx, all_features);
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

TreeModel fit_tree(const Table& train, const Hyperparams& params) {
  if (train.n_rows() < 2) {
    throw Error(Errc::empty_input, "fit_tree needs at least 2 rows");
  }
  if (!train.has_labels()) {
    throw Error(Errc::no_labels, "fit_tree requires labels");
  }
  auto counts = class_counts(train);
  if (counts.size() < 2) {
    throw Error(Errc::single_class, "fit_tree requires both classes");
  }

  std::vector<double> labels01(train.n_rows());
  for (std::size_t i = 0; i < train.n_rows(); ++i) {
    labels01[i] = static_cast<double>(train.labels()[i]);
  }
  std::vector<std::size_t> rows(train.n_rows());
  std::iota(rows.begin(), rows.end(), 0);

  GiniGrower grower{train, labels01, params, {}};
  grower.grow(rows, 0);

  return TreeModel{std::move(grower.tree), train.column_names(), params};
}

namespace detail {

void check_schema(const std::vector<std::string>& model_names,
                  const Table& table) {
  if (model_names != table.column_names()) {
    throw Error(Errc::schema_mismatch,
                "table columns do not match the training schema");
  }
}

}  // namespace detail

std::vector<double> predict_proba(const TreeModel& model, const Table& table) {
  detail::check_schema(model.feature_names, table);
  std::vector<double> out(table.n_rows());
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    out[r] = model.tree.predict_row(table.row(r));
  }
  return out;
}

}  // namespace treelab
