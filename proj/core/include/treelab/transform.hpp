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

#ifndef TREELAB_TRANSFORM_HPP
#define TREELAB_TRANSFORM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treelab/table.hpp"

namespace treelab {

enum class InteractionOp { product, ratio };

/// Appended column computed from two source columns: x_a * x_b, or
/// x_a / (x_b + epsilon) for ratios.
struct InteractionRecipe {
  std::string output_name;
  std::string column_a;
  std::string column_b;
  InteractionOp op = InteractionOp::product;
};

/// Appended column x^power of a single source column.
struct PolynomialRecipe {
  std::string output_name;
  std::string column;
  int power = 2;
};

struct TransformOptions {
  bool impute_missing = false;
  bool clip_outliers = true;
  bool engineer = true;
  std::vector<InteractionRecipe> interactions;  // empty = study defaults
  std::vector<PolynomialRecipe> polynomials;    // empty = study defaults
  bool prune = true;
  double prune_threshold = 0.95;
  bool standardize = true;
};

/// The clinically motivated default recipes: six interactions, three squared
/// terms, two ratios, all over the study schema. Config-overridable.
std::vector<InteractionRecipe> default_interactions();
std::vector<PolynomialRecipe> default_polynomials();

/// Denominator guard for ratio features (PhysicalActivity can be zero).
inline constexpr double kRatioEpsilon = 1e-6;

/// Frozen train-derived preprocessing state. Applying it never recomputes a
/// statistic from the incoming table, so validation and test data cannot
/// leak into the fit; fingerprint pins the exact training table used.
struct FittedTransform {
  std::vector<std::string> input_schema;
  std::optional<std::vector<double>> impute_medians;  // per input column
  std::optional<std::vector<std::pair<double, double>>> clip_bounds;
  std::vector<InteractionRecipe> interactions;
  std::vector<PolynomialRecipe> polynomials;
  std::vector<std::string> dropped_columns;  // in pruning scan order
  bool standardize = false;
  std::vector<std::string> output_schema;  // columns after drops
  std::vector<double> means;               // aligned with output_schema
  std::vector<double> stds;
  std::string fit_fingerprint;

  bool operator==(const FittedTransform&) const = default;
};

/// Fit the whole pipeline on the training table (impute -> clip -> engineer
/// -> prune -> standardize) and return the fitted state plus the transformed
/// training table.
std::pair<FittedTransform, Table> fit_transform(const Table& train,
                                                const TransformOptions& options);

/// Reproduce a fitted transform on new data. The input schema must match the
/// fit-time schema exactly.
Table apply_transform(const FittedTransform& fitted, const Table& table);

/// Append recipe columns; originals are retained and recipes may reference
/// only original names, so re-application is shape-stable.
Table engineer_features(const Table& table,
                        const std::vector<InteractionRecipe>& interactions,
                        const std::vector<PolynomialRecipe>& polynomials);

/// Greedy correlation pruning on the training table: scanning pairs (i, j),
/// i < j, in column order, the later column of any pair with |Pearson r|
/// above the threshold is dropped. Constant columns have r defined as 0.
std::vector<std::string> prune_correlated(const Table& train, double threshold);

/// Per-column Tukey bounds [Q1 - 1.5 IQR, Q3 + 1.5 IQR] from the training
/// table; quantiles use linear interpolation on the sorted values.
std::vector<std::pair<double, double>> clip_outliers(const Table& train);

/// Clamp every cell into its column's bounds.
Table apply_clip(const Table& table,
                 const std::vector<std::pair<double, double>>& bounds);

/// Pearson correlation; 0 if either column is constant.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Linear-interpolation quantile of a sorted vector, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

std::string transform_to_json(const FittedTransform& fitted);
FittedTransform transform_from_json(const std::string& text);
void save_transform(const FittedTransform& fitted, const std::string& path);
FittedTransform load_transform(const std::string& path);

}  // namespace treelab

#endif  // TREELAB_TRANSFORM_HPP
