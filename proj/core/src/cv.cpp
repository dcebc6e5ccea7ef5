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

#include "treelab/cv.hpp"

#include <cmath>

#include "treelab/rng.hpp"
#include "treelab/split.hpp"

namespace treelab {
namespace {

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

}  // namespace

CvReport cross_validate(const Table& table, const CvSpec& spec, std::size_t k,
                        std::uint64_t seed, std::size_t n_threads) {
  const auto folds = stratified_kfold(table, k, derive_seed(seed, "cv"));

  CvReport report;
  std::vector<double> acc, prec, rec, f1, auc;
  std::size_t fold_index = 0;
  for (const auto& [train_idx, held_idx] : folds) {
    Table fold_train = table.select_rows(train_idx);
    Table fold_held = table.select_rows(held_idx);

    if (spec.transform) {
      auto [fitted, transformed] = fit_transform(fold_train, *spec.transform);
      fold_train = std::move(transformed);
      fold_held = apply_transform(fitted, fold_held);
    }
    if (spec.resample) {
      ResamplePlan plan = *spec.resample;
      plan.seed = derive_seed(seed, "cv_resample", fold_index);
      fold_train = smote_tomek(fold_train, plan).first;
    }

    ModelSpec model_spec = spec.model;
    model_spec.params.seed = derive_seed(seed, "cv_fold", fold_index);
    Model model = fit_model(fold_train, model_spec, n_threads);

    MetricsReport fold_report =
        evaluate_scores(fold_held.labels(), predict_proba(model, fold_held));
    acc.push_back(fold_report.accuracy);
    prec.push_back(fold_report.precision);
    rec.push_back(fold_report.recall);
    f1.push_back(fold_report.f1);
    auc.push_back(fold_report.auc);
    report.per_fold.push_back(std::move(fold_report));
    ++fold_index;
  }

  report.accuracy = summarize(acc);
  report.precision = summarize(prec);
  report.recall = summarize(rec);
  report.f1 = summarize(f1);
  report.auc = summarize(auc);
  return report;
}

}  // namespace treelab
