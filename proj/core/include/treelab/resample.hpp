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

#ifndef TREELAB_RESAMPLE_HPP
#define TREELAB_RESAMPLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treelab/table.hpp"

namespace treelab {

enum class LinkRemoval { majority_only, both };

struct ResamplePlan {
  std::size_t k_neighbors = 5;
  double target_ratio = 1.0;  // minority:majority after oversampling
  LinkRemoval link_removal = LinkRemoval::majority_only;
  std::uint64_t seed = 0;
};

struct ResampleReport {
  std::map<int, std::size_t> before;
  std::map<int, std::size_t> after_smote;
  std::size_t links_removed = 0;  // number of Tomek links found
  std::map<int, std::size_t> after;
};

/// SMOTE oversampling: synthetic minority rows s = x + u * (x_nn - x) with
/// u ~ U(0,1), x_nn drawn uniformly among the k nearest minority neighbors
/// of x (Euclidean distance, ties toward the lower row index). Originals are
/// untouched; rows are appended until minority/majority reaches the target
/// ratio. Run this after standardization so no feature dominates the metric.
Table smote(const Table& train, const ResamplePlan& plan);

/// All mutual-nearest-neighbor pairs with opposite labels, each reported
/// once as (i, j) with i < j. Distance ties break toward the lower index.
std::vector<std::pair<std::size_t, std::size_t>> tomek_links(const Table& table);

/// SMOTE followed by Tomek-link cleaning on the oversampled table. The
/// majority_only policy removes only link members whose label matches the
/// pre-SMOTE majority class; `both` removes both endpoints.
std::pair<Table, ResampleReport> smote_tomek(const Table& train,
                                             const ResamplePlan& plan);

std::string resample_report_to_json(const ResampleReport& report);

}  // namespace treelab

#endif  // TREELAB_RESAMPLE_HPP
