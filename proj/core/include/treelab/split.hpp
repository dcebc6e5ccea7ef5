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

#ifndef TREELAB_SPLIT_HPP
#define TREELAB_SPLIT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treelab/table.hpp"

namespace treelab {

/// Disjoint train/validation/test row indices covering the whole table.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Two-stage stratified split: the test fraction is carved from each class
/// first, then the validation fraction from the remainder, so that the final
/// train/validation/test proportions are fractions of the ORIGINAL table
/// (e.g. 0.15/0.15 leaves ~70% for training). Within each class the
/// (test, validation, train) sizes are the largest-remainder rounding of the
/// ideal fractional shares, which keeps every split within +-1 of exact
/// proportionality. Deterministic under seed.
SplitIndices stratified_two_stage_split(const Table& table,
                                        double test_fraction,
                                        double validation_fraction,
                                        std::uint64_t seed);

/// k stratified folds as (train indices, held-out indices) pairs. Every row
/// is held out exactly once and per-fold class counts stay within +-1 of
/// proportional.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
stratified_kfold(const Table& table, std::size_t k, std::uint64_t seed);

std::string split_to_json(const SplitIndices& split);
SplitIndices split_from_json(const std::string& text);

void save_split(const SplitIndices& split, const std::string& path);
SplitIndices load_split(const std::string& path);

}  // namespace treelab

#endif  // TREELAB_SPLIT_HPP
