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

#include "treelab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "treelab/error.hpp"

namespace treelab {

ConfusionCounts confusion(const std::vector<int>& labels,
                          const std::vector<int>& predictions) {
  if (labels.size() != predictions.size()) {
    throw Error(Errc::length_mismatch,
                "labels and predictions differ in length");
  }
  if (labels.empty()) {
    throw Error(Errc::empty_input, "confusion needs at least one sample");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    int y = labels[i];
    int p = predictions[i];
    if ((y != 0 && y != 1) || (p != 0 && p != 1)) {
      throw Error(Errc::schema_mismatch, "labels and predictions must be 0/1");
    }
    if (y == 1 && p == 1) ++c.tp;
    else if (y == 0 && p == 1) ++c.fp;
    else if (y == 1 && p == 0) ++c.fn;
    else ++c.tn;
  }
  return c;
}

MetricsReport scalar_metrics(const ConfusionCounts& counts) {
  if (counts.total() == 0) {
    throw Error(Errc::empty_input, "confusion counts are all zero");
  }
  MetricsReport r;
  r.counts = counts;
  const double tp = static_cast<double>(counts.tp);
  const double fp = static_cast<double>(counts.fp);
  const double fn = static_cast<double>(counts.fn);
  const double tn = static_cast<double>(counts.tn);

  r.accuracy = (tp + tn) / (tp + tn + fp + fn);

  if (counts.tp + counts.fp == 0) {
    r.flags |= static_cast<unsigned>(MetricFlag::precision_undefined);
  } else {
    r.precision = tp / (tp + fp);
  }
  if (counts.tp + counts.fn == 0) {
    r.flags |= static_cast<unsigned>(MetricFlag::recall_undefined);
  } else {
    r.recall = tp / (tp + fn);
  }
  if (r.precision + r.recall == 0.0) {
    r.flags |= static_cast<unsigned>(MetricFlag::f1_undefined);
  } else {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  r.flags |= static_cast<unsigned>(MetricFlag::auc_unavailable);
  return r;
}

std::pair<double, std::vector<RocPoint>> roc_auc(
    const std::vector<int>& labels, const std::vector<double>& scores) {
  if (labels.size() != scores.size()) {
    throw Error(Errc::length_mismatch, "labels and scores differ in length");
  }
  std::size_t n_pos = 0;
  for (int y : labels) {
    if (y == 1) ++n_pos;
  }
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(Errc::single_class_labels, "roc_auc needs both classes");
  }

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  // Descending threshold sweep; tied scores collapse into one point, which
  // makes the trapezoid across a tie block match the half-credit convention.
  std::vector<RocPoint> points;
  points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  // Pair statistic accumulated alongside: positives already seen rank above
  // the negatives of later blocks; ties within a block get half credit.
  double correct_pairs = 0.0;
  double tied_pairs = 0.0;
  while (i < order.size()) {
    std::size_t j = i;
    std::size_t block_pos = 0, block_neg = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] == 1) ++block_pos;
      else ++block_neg;
      ++j;
    }
    correct_pairs += static_cast<double>(tp) * static_cast<double>(block_neg);
    tied_pairs += static_cast<double>(block_pos) * static_cast<double>(block_neg);
    tp += block_pos;
    fp += block_neg;
    points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                      static_cast<double>(tp) / static_cast<double>(n_pos),
                      scores[order[i]]});
    i = j;
  }

  const double total_pairs =
      static_cast<double>(n_pos) * static_cast<double>(n_neg);
  const double auc = (correct_pairs + 0.5 * tied_pairs) / total_pairs;
  return {auc, std::move(points)};
}

std::vector<int> labels_from_scores(const std::vector<double>& scores) {
  std::vector<int> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    labels[i] = scores[i] >= 0.5 ? 1 : 0;
  }
  return labels;
}

MetricsReport evaluate_scores(const std::vector<int>& labels,
                              const std::vector<double>& scores) {
  MetricsReport r = scalar_metrics(confusion(labels, labels_from_scores(scores)));
  bool has_pos = false, has_neg = false;
  for (int y : labels) (y == 1 ? has_pos : has_neg) = true;
  if (has_pos && has_neg) {
    auto [auc, points] = roc_auc(labels, scores);
    r.auc = auc;
    r.roc_points = std::move(points);
    r.flags &= ~static_cast<unsigned>(MetricFlag::auc_unavailable);
  }
  return r;
}

std::string flags_to_string(unsigned flags) {
  std::string out;
  auto add = [&](MetricFlag f, const char* name) {
    if (flags & static_cast<unsigned>(f)) {
      if (!out.empty()) out += ",";
      out += name;
    }
  };
  add(MetricFlag::precision_undefined, "precision_undefined");
  add(MetricFlag::recall_undefined, "recall_undefined");
  add(MetricFlag::f1_undefined, "f1_undefined");
  add(MetricFlag::auc_unavailable, "auc_unavailable");
  return out;
}

}  // namespace treelab
