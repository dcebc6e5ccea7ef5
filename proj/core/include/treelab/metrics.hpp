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

#ifndef TREELAB_METRICS_HPP
#define TREELAB_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace treelab {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;
};

/// Degenerate-denominator markers; the corresponding metric is reported as 0.
enum class MetricFlag : unsigned {
  precision_undefined = 1u << 0,  // tp + fp == 0
  recall_undefined = 1u << 1,     // tp + fn == 0
  f1_undefined = 1u << 2,         // precision + recall == 0
  auc_unavailable = 1u << 3,      // scores not supplied or single class
};

struct MetricsReport {
  ConfusionCounts counts;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  unsigned flags = 0;
  std::vector<RocPoint> roc_points;

  bool has_flag(MetricFlag f) const {
    return (flags & static_cast<unsigned>(f)) != 0;
  }
};

ConfusionCounts confusion(const std::vector<int>& labels,
                          const std::vector<int>& predictions);

/// Accuracy, precision, recall and F1 from confusion counts. Degenerate
/// denominators yield 0 plus a flag instead of an error, so an all-negative
/// cross-validation fold cannot abort a run.
MetricsReport scalar_metrics(const ConfusionCounts& counts);

/// AUC as the Mann-Whitney pair statistic (ties get half credit) together
/// with the ROC points of a descending-threshold sweep; the trapezoidal
/// integral of the points equals the pair statistic.
std::pair<double, std::vector<RocPoint>> roc_auc(
    const std::vector<int>& labels, const std::vector<double>& scores);

/// scalar_metrics + roc_auc in one report, with predictions at the 0.5
/// probability threshold.
MetricsReport evaluate_scores(const std::vector<int>& labels,
                              const std::vector<double>& scores);

std::vector<int> labels_from_scores(const std::vector<double>& scores);

std::string flags_to_string(unsigned flags);

}  // namespace treelab

#endif  // TREELAB_METRICS_HPP
