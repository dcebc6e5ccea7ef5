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

#ifndef TREELAB_CV_HPP
#define TREELAB_CV_HPP

#include <optional>

#include "treelab/metrics.hpp"
#include "treelab/model.hpp"
#include "treelab/resample.hpp"
#include "treelab/transform.hpp"

namespace treelab {

/// What to run inside each fold. Resampling (and an optional per-fold
/// transform refit) always touch the training folds only.
struct CvSpec {
  ModelSpec model;
  std::optional<ResamplePlan> resample;
  std::optional<TransformOptions> transform;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

struct CvReport {
  std::vector<MetricsReport> per_fold;
  MetricSummary accuracy;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  MetricSummary auc;
};

/// Stratified k-fold cross-validation: fit on k-1 folds (resampling the
/// training folds only), score the held-out fold, and summarize each metric
/// as mean and sample standard deviation.
CvReport cross_validate(const Table& table, const CvSpec& spec, std::size_t k,
                        std::uint64_t seed, std::size_t n_threads = 0);

}  // namespace treelab

#endif  // TREELAB_CV_HPP
