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

#include "treelab/transform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treelab/error.hpp"

namespace treelab {

namespace {

constexpr double kConstantStd = 1e-12;

std::size_t require_column(const Table& table, const std::string& name) {
  auto idx = table.column_index(name);
  if (!idx) {
    throw Error(Errc::missing_column, "column '" + name + "' not found");
  }
  return *idx;
}

double median_ignoring_nan(std::vector<double> values,
                           const std::string& column) {
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return std::isnan(v); }),
               values.end());
  if (values.empty()) {
    throw Error(Errc::missing_value,
                "column '" + column + "' has no observed values to impute from");
  }
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.5);
}

Table impute(const Table& table, const std::vector<double>& medians) {
  std::vector<double> cells = table.cells();
  const std::size_t n_cols = table.n_cols();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (std::isnan(cells[i])) cells[i] = medians[i % n_cols];
  }
  return Table(table.column_names(), std::move(cells), table.labels(),
               table.row_ids(), false);
}

Table standardize_with(const Table& table, const std::vector<double>& means,
                       const std::vector<double>& stds) {
  std::vector<double> cells = table.cells();
  const std::size_t n_cols = table.n_cols();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::size_t c = i % n_cols;
    cells[i] = stds[c] < kConstantStd ? 0.0 : (cells[i] - means[c]) / stds[c];
  }
  return Table(table.column_names(), std::move(cells), table.labels(),
               table.row_ids(), table.allows_missing());
}

Table drop_columns_by_name(const Table& table,
                           const std::vector<std::string>& dropped) {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    const std::string& name = table.column_names()[c];
    if (std::find(dropped.begin(), dropped.end(), name) == dropped.end()) {
      keep.push_back(c);
    }
  }
  return table.select_columns(keep);
}

}  // namespace

std::vector<InteractionRecipe> default_interactions() {
  return {
      {"BMI_x_Age", "BMI", "Age", InteractionOp::product},
      {"MMSE_x_FunctionalAssessment", "MMSE", "FunctionalAssessment",
       InteractionOp::product},
      {"SystolicBP_x_DiastolicBP", "SystolicBP", "DiastolicBP",
       InteractionOp::product},
      {"MMSE_x_ADL", "MMSE", "ADL", InteractionOp::product},
      {"FunctionalAssessment_x_Age", "FunctionalAssessment", "Age",
       InteractionOp::product},
      {"CholesterolLDL_x_CholesterolHDL", "CholesterolLDL", "CholesterolHDL",
       InteractionOp::product},
      {"MMSE_over_PhysicalActivity", "MMSE", "PhysicalActivity",
       InteractionOp::ratio},
      {"SleepQuality_over_Age", "SleepQuality", "Age", InteractionOp::ratio},
  };
}

std::vector<PolynomialRecipe> default_polynomials() {
  return {
      {"Age_sq", "Age", 2},
      {"BMI_sq", "BMI", 2},
      {"MMSE_sq", "MMSE", 2},
  };
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;  // constant column convention
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::pair<double, double>> clip_outliers(const Table& train) {
  if (train.n_rows() < 4) {
    throw Error(Errc::empty_input,
                "clip_outliers needs at least 4 rows per column");
  }
  std::vector<std::pair<double, double>> bounds;
  bounds.reserve(train.n_cols());
  for (std::size_t c = 0; c < train.n_cols(); ++c) {
    std::vector<double> col = train.column(c);
    std::sort(col.begin(), col.end());
    const double q1 = quantile_sorted(col, 0.25);
    const double q3 = quantile_sorted(col, 0.75);
    const double iqr = q3 - q1;
    bounds.emplace_back(q1 - 1.5 * iqr, q3 + 1.5 * iqr);
  }
  return bounds;
}

Table apply_clip(const Table& table,
                 const std::vector<std::pair<double, double>>& bounds) {
  if (bounds.size() != table.n_cols()) {
    throw Error(Errc::schema_mismatch,
                "clip bounds do not match the column count");
  }
  std::vector<double> cells = table.cells();
  const std::size_t n_cols = table.n_cols();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& [lo, hi] = bounds[i % n_cols];
    if (cells[i] < lo) cells[i] = lo;
    else if (cells[i] > hi) cells[i] = hi;
  }
  return Table(table.column_names(), std::move(cells), table.labels(),
               table.row_ids(), table.allows_missing());
}

Table engineer_features(const Table& table,
                        const std::vector<InteractionRecipe>& interactions,
                        const std::vector<PolynomialRecipe>& polynomials) {
  std::vector<std::string> names = table.column_names();
  struct Column {
    std::string name;
    std::vector<double> values;
  };
  std::vector<Column> appended;

  for (const auto& recipe : interactions) {
    const std::size_t a = require_column(table, recipe.column_a);
    const std::size_t b = require_column(table, recipe.column_b);
    Column col{recipe.output_name, std::vector<double>(table.n_rows())};
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      const double va = table.at(r, a);
      const double vb = table.at(r, b);
      col.values[r] = recipe.op == InteractionOp::product
                          ? va * vb
                          : va / (vb + kRatioEpsilon);
    }
    appended.push_back(std::move(col));
  }
  for (const auto& recipe : polynomials) {
    const std::size_t c = require_column(table, recipe.column);
    Column col{recipe.output_name, std::vector<double>(table.n_rows())};
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      col.values[r] = std::pow(table.at(r, c), recipe.power);
    }
    appended.push_back(std::move(col));
  }

  const std::size_t total_cols = table.n_cols() + appended.size();
  std::vector<double> cells;
  cells.reserve(table.n_rows() * total_cols);
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    auto row = table.row(r);
    cells.insert(cells.end(), row.begin(), row.end());
    for (const auto& col : appended) cells.push_back(col.values[r]);
  }
  for (auto& col : appended) names.push_back(std::move(col.name));
  return Table(std::move(names), std::move(cells), table.labels(),
               table.row_ids(), table.allows_missing());
}

std::vector<std::string> prune_correlated(const Table& train, double threshold) {
  if (train.n_rows() < 2) {
    throw Error(Errc::empty_input, "pruning needs at least 2 rows");
  }
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(Errc::bad_fraction, "prune threshold must lie in (0,1]");
  }
  const std::size_t n_cols = train.n_cols();
  std::vector<std::vector<double>> cols(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) cols[c] = train.column(c);

  std::vector<bool> dropped(n_cols, false);
  std::vector<std::string> dropped_names;
  for (std::size_t i = 0; i < n_cols; ++i) {
    if (dropped[i]) continue;
    for (std::size_t j = i + 1; j < n_cols; ++j) {
      if (dropped[j]) continue;
      if (std::abs(pearson(cols[i], cols[j])) > threshold) {
        dropped[j] = true;
        dropped_names.push_back(train.column_names()[j]);
      }
    }
  }
  return dropped_names;
}

std::pair<FittedTransform, Table> fit_transform(const Table& train,
                                                const TransformOptions& options) {
  if (!train.has_labels()) {
    throw Error(Errc::no_labels, "fit_transform requires a labeled table");
  }
  if (train.has_missing() && !options.impute_missing) {
    throw Error(Errc::missing_value,
                "training table has missing cells; enable imputation");
  }

  FittedTransform fitted;
  fitted.input_schema = train.column_names();
  fitted.fit_fingerprint = table_fingerprint_hex(train);

  Table current = train;
  if (options.impute_missing) {
    std::vector<double> medians;
    medians.reserve(current.n_cols());
    for (std::size_t c = 0; c < current.n_cols(); ++c) {
      medians.push_back(
          median_ignoring_nan(current.column(c), current.column_names()[c]));
    }
    current = impute(current, medians);
    fitted.impute_medians = std::move(medians);
  }

  if (options.clip_outliers) {
    fitted.clip_bounds = clip_outliers(current);
    current = apply_clip(current, *fitted.clip_bounds);
  }

  if (options.engineer) {
    fitted.interactions = options.interactions.empty() ? default_interactions()
                                                       : options.interactions;
    fitted.polynomials = options.polynomials.empty() ? default_polynomials()
                                                     : options.polynomials;
    current = engineer_features(current, fitted.interactions, fitted.polynomials);
  }

  if (options.prune) {
    fitted.dropped_columns = prune_correlated(current, options.prune_threshold);
    current = drop_columns_by_name(current, fitted.dropped_columns);
  }

  fitted.output_schema = current.column_names();
  if (options.standardize) {
    fitted.standardize = true;
    fitted.means.resize(current.n_cols());
    fitted.stds.resize(current.n_cols());
    const auto n = static_cast<double>(current.n_rows());
    for (std::size_t c = 0; c < current.n_cols(); ++c) {
      double mean = 0.0;
      for (std::size_t r = 0; r < current.n_rows(); ++r) mean += current.at(r, c);
      mean /= n;
      double ss = 0.0;
      for (std::size_t r = 0; r < current.n_rows(); ++r) {
        const double d = current.at(r, c) - mean;
        ss += d * d;
      }
      fitted.means[c] = mean;
      fitted.stds[c] = std::sqrt(ss / n);
    }
    current = standardize_with(current, fitted.means, fitted.stds);
  }

  return {std::move(fitted), std::move(current)};
}

Table apply_transform(const FittedTransform& fitted, const Table& table) {
  if (table.column_names() != fitted.input_schema) {
    throw Error(Errc::schema_mismatch,
                "table columns do not match the fit-time schema");
  }

  Table current = table;
  if (fitted.impute_medians) {
    current = impute(current, *fitted.impute_medians);
  } else if (current.has_missing()) {
    throw Error(Errc::missing_value,
                "table has missing cells but the transform has no imputer");
  }
  if (fitted.clip_bounds) {
    current = apply_clip(current, *fitted.clip_bounds);
  }
  if (!fitted.interactions.empty() || !fitted.polynomials.empty()) {
    current = engineer_features(current, fitted.interactions, fitted.polynomials);
  }
  if (!fitted.dropped_columns.empty()) {
    current = drop_columns_by_name(current, fitted.dropped_columns);
  }
  if (current.column_names() != fitted.output_schema) {
    throw Error(Errc::schema_mismatch,
                "engineered columns do not match the fitted output schema");
  }
  if (fitted.standardize) {
    current = standardize_with(current, fitted.means, fitted.stds);
  }
  return current;
}

namespace {

nlohmann::ordered_json recipes_to_json(const FittedTransform& fitted) {
  nlohmann::ordered_json j;
  j["interactions"] = nlohmann::ordered_json::array();
  for (const auto& r : fitted.interactions) {
    j["interactions"].push_back(
        {{"name", r.output_name},
         {"a", r.column_a},
         {"b", r.column_b},
         {"op", r.op == InteractionOp::product ? "product" : "ratio"}});
  }
  j["polynomials"] = nlohmann::ordered_json::array();
  for (const auto& r : fitted.polynomials) {
    j["polynomials"].push_back(
        {{"name", r.output_name}, {"column", r.column}, {"power", r.power}});
  }
  return j;
}

}  // namespace

std::string transform_to_json(const FittedTransform& fitted) {
  nlohmann::ordered_json j;
  j["input_schema"] = fitted.input_schema;
  if (fitted.impute_medians) j["impute_medians"] = *fitted.impute_medians;
  if (fitted.clip_bounds) {
    nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
    for (const auto& [lo, hi] : *fitted.clip_bounds) {
      bounds.push_back({lo, hi});
    }
    j["clip_bounds"] = std::move(bounds);
  }
  auto recipes = recipes_to_json(fitted);
  j["interactions"] = recipes["interactions"];
  j["polynomials"] = recipes["polynomials"];
  j["dropped_columns"] = fitted.dropped_columns;
  j["standardize"] = fitted.standardize;
  j["output_schema"] = fitted.output_schema;
  j["means"] = fitted.means;
  j["stds"] = fitted.stds;
  j["fingerprint"] = fitted.fit_fingerprint;
  return j.dump(2);
}

FittedTransform transform_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  FittedTransform fitted;
  fitted.input_schema = j.at("input_schema").get<std::vector<std::string>>();
  if (j.contains("impute_medians")) {
    fitted.impute_medians = j["impute_medians"].get<std::vector<double>>();
  }
  if (j.contains("clip_bounds")) {
    std::vector<std::pair<double, double>> bounds;
    for (const auto& b : j["clip_bounds"]) {
      bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
    }
    fitted.clip_bounds = std::move(bounds);
  }
  for (const auto& r : j.at("interactions")) {
    fitted.interactions.push_back(
        {r.at("name").get<std::string>(), r.at("a").get<std::string>(),
         r.at("b").get<std::string>(),
         r.at("op").get<std::string>() == "product" ? InteractionOp::product
                                                    : InteractionOp::ratio});
  }
  for (const auto& r : j.at("polynomials")) {
    fitted.polynomials.push_back({r.at("name").get<std::string>(),
                                  r.at("column").get<std::string>(),
                                  r.at("power").get<int>()});
  }
  fitted.dropped_columns =
      j.at("dropped_columns").get<std::vector<std::string>>();
  fitted.standardize = j.at("standardize").get<bool>();
  fitted.output_schema = j.at("output_schema").get<std::vector<std::string>>();
  fitted.means = j.at("means").get<std::vector<double>>();
  fitted.stds = j.at("stds").get<std::vector<double>>();
  fitted.fit_fingerprint = j.at("fingerprint").get<std::string>();
  return fitted;
}

void save_transform(const FittedTransform& fitted, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << transform_to_json(fitted) << '\n';
}

FittedTransform load_transform(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return transform_from_json(buffer.str());
}

}  // namespace treelab
