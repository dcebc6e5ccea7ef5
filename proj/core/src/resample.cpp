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

#include "treelab/resample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "treelab/error.hpp"
#include "treelab/rng.hpp"

namespace treelab {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

// Indices of the k nearest rows (within `rows`) to rows[self], excluding
// self; ties break toward the lower row index.
std::vector<std::size_t> k_nearest(const Table& table,
                                   const std::vector<std::size_t>& rows,
                                   std::size_t self, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> dists;
  dists.reserve(rows.size() - 1);
  const auto self_row = table.row(rows[self]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == self) continue;
    dists.emplace_back(squared_distance(self_row, table.row(rows[i])), rows[i]);
  }
  std::sort(dists.begin(), dists.end());
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k && i < dists.size(); ++i) {
    out.push_back(dists[i].second);
  }
  return out;
}

std::pair<int, int> minority_majority(const std::map<int, std::size_t>& counts) {
  // Tie in counts makes class 1 the minority.
  int minority = 1, majority = 0;
  if (counts.at(0) < counts.at(1)) {
    minority = 0;
    majority = 1;
  }
  return {minority, majority};
}

}  // namespace

Table smote(const Table& train, const ResamplePlan& plan) {
  if (!train.has_labels()) {
    throw Error(Errc::no_labels, "smote requires labels");
  }
  if (!(plan.target_ratio > 0.0 && plan.target_ratio <= 1.0)) {
    throw Error(Errc::bad_fraction, "target_ratio must lie in (0,1]");
  }
  if (plan.k_neighbors < 1) {
    throw Error(Errc::config_error, "k_neighbors must be at least 1");
  }
  auto counts = class_counts(train);
  if (counts.size() != 2) {
    throw Error(Errc::single_class, "smote requires both classes");
  }
  const auto [minority, majority] = minority_majority(counts);

  std::vector<std::size_t> minority_rows;
  for (std::size_t i = 0; i < train.n_rows(); ++i) {
    if (train.labels()[i] == minority) minority_rows.push_back(i);
  }
  if (minority_rows.size() < plan.k_neighbors + 1) {
    throw Error(Errc::too_few_minority,
                "minority class needs at least k_neighbors + 1 rows");
  }

  const auto target = static_cast<std::size_t>(
      std::llround(plan.target_ratio * static_cast<double>(counts.at(majority))));
  const std::size_t n_synthetic =
      target > minority_rows.size() ? target - minority_rows.size() : 0;

  // Neighbor lists are computed once per minority row, lazily.
  std::vector<std::vector<std::size_t>> neighbors(minority_rows.size());

  std::vector<double> cells = train.cells();
  std::vector<int> labels = train.labels();
  cells.reserve(cells.size() + n_synthetic * train.n_cols());
  labels.reserve(labels.size() + n_synthetic);

  Rng rng(derive_seed(plan.seed, "smote"));
  for (std::size_t s = 0; s < n_synthetic; ++s) {
    const std::size_t base = rng.next_below(minority_rows.size());
    if (neighbors[base].empty()) {
      neighbors[base] = k_nearest(train, minority_rows, base, plan.k_neighbors);
    }
    const auto& nn = neighbors[base];
    const std::size_t pick = nn[rng.next_below(nn.size())];
    const double u = rng.next_unit();

    const auto x = train.row(minority_rows[base]);
    const auto y = train.row(pick);
    for (std::size_t c = 0; c < train.n_cols(); ++c) {
      cells.push_back(x[c] + u * (y[c] - x[c]));
    }
    labels.push_back(minority);
  }

  return Table(train.column_names(), std::move(cells), std::move(labels), {},
               train.allows_missing());
}

std::vector<std::pair<std::size_t, std::size_t>> tomek_links(const Table& table) {
  if (!table.has_labels()) {
    throw Error(Errc::no_labels, "tomek_links requires labels");
  }
  if (table.n_rows() < 2) {
    throw Error(Errc::empty_input, "tomek_links needs at least 2 rows");
  }

  const std::size_t n = table.n_rows();
  std::vector<std::size_t> nearest(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = i;
    const auto row_i = table.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = squared_distance(row_i, table.row(j));
      if (d < best) {  // strict: ties keep the lower index found first
        best = d;
        best_j = j;
      }
    }
    nearest[i] = best_j;
  }

  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = nearest[i];
    if (j > i && nearest[j] == i && table.labels()[i] != table.labels()[j]) {
      links.emplace_back(i, j);
    }
  }
  return links;
}

std::pair<Table, ResampleReport> smote_tomek(const Table& train,
                                             const ResamplePlan& plan) {
  ResampleReport report;
  report.before = class_counts(train);
  const auto [minority, majority] = minority_majority(report.before);

  Table oversampled = smote(train, plan);
  report.after_smote = class_counts(oversampled);

  auto links = tomek_links(oversampled);
  report.links_removed = links.size();

  std::vector<bool> removed(oversampled.n_rows(), false);
  for (const auto& [i, j] : links) {
    if (plan.link_removal == LinkRemoval::both) {
      removed[i] = true;
      removed[j] = true;
    } else {
      if (oversampled.labels()[i] == majority) removed[i] = true;
      if (oversampled.labels()[j] == majority) removed[j] = true;
    }
  }

  std::vector<std::size_t> keep;
  keep.reserve(oversampled.n_rows());
  for (std::size_t i = 0; i < oversampled.n_rows(); ++i) {
    if (!removed[i]) keep.push_back(i);
  }
  Table cleaned = oversampled.select_rows(keep);
  report.after = class_counts(cleaned);
  return {std::move(cleaned), std::move(report)};
}

std::string resample_report_to_json(const ResampleReport& report) {
  auto counts_json = [](const std::map<int, std::size_t>& counts) {
    nlohmann::ordered_json j;
    for (const auto& [label, count] : counts) {
      j[std::to_string(label)] = count;
    }
    return j;
  };
  nlohmann::ordered_json j;
  j["before"] = counts_json(report.before);
  j["after_smote"] = counts_json(report.after_smote);
  j["links_removed"] = report.links_removed;
  j["after"] = counts_json(report.after);
  return j.dump(2);
}

}  // namespace treelab
