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

#include "treelab/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treelab/error.hpp"
#include "treelab/rng.hpp"

namespace treelab {
namespace {

// Largest-remainder rounding of fractional shares to integers summing to
// `total`. Ties in remainder break toward the earlier share, which fixes the
// (test, validation, train) priority when a class splits evenly.
std::vector<std::size_t> largest_remainder(const std::vector<double>& shares,
                                           std::size_t total) {
  std::vector<std::size_t> alloc(shares.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    alloc[i] = static_cast<std::size_t>(std::floor(shares[i]));
    assigned += alloc[i];
    remainders.emplace_back(shares[i] - std::floor(shares[i]), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total && k < remainders.size(); ++k) {
    ++alloc[remainders[k].second];
    ++assigned;
  }
  return alloc;
}

std::map<int, std::vector<std::size_t>> indices_by_class(const Table& table) {
  if (!table.has_labels()) {
    throw Error(Errc::no_labels, "stratified splitting requires labels");
  }
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < table.n_rows(); ++i) {
    groups[table.labels()[i]].push_back(i);
  }
  return groups;
}

}  // namespace

SplitIndices stratified_two_stage_split(const Table& table,
                                        double test_fraction,
                                        double validation_fraction,
                                        std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0) ||
      !(validation_fraction > 0.0 && validation_fraction < 1.0) ||
      !(test_fraction + validation_fraction < 1.0)) {
    throw Error(Errc::bad_fraction,
                "fractions must lie in (0,1) and sum below 1");
  }

  auto groups = indices_by_class(table);
  for (const auto& [label, members] : groups) {
    if (members.size() < 2) {
      throw Error(Errc::degenerate_class,
                  "class " + std::to_string(label) + " has fewer than 2 rows");
    }
  }

  SplitIndices split;
  for (auto& [label, members] : groups) {
    Rng rng(derive_seed(seed, "split", static_cast<std::uint64_t>(label)));
    rng.shuffle(members);

    const auto n = static_cast<double>(members.size());
    auto alloc = largest_remainder(
        {n * test_fraction, n * validation_fraction,
         n * (1.0 - test_fraction - validation_fraction)},
        members.size());

    std::size_t pos = 0;
    for (std::size_t i = 0; i < alloc[0]; ++i) split.test.push_back(members[pos++]);
    for (std::size_t i = 0; i < alloc[1]; ++i) split.validation.push_back(members[pos++]);
    while (pos < members.size()) split.train.push_back(members[pos++]);
  }

  std::sort(split.train.begin(), split.train.end());
  std::sort(split.validation.begin(), split.validation.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
stratified_kfold(const Table& table, std::size_t k, std::uint64_t seed) {
  if (k < 2) {
    throw Error(Errc::bad_fraction, "k must be at least 2");
  }
  auto groups = indices_by_class(table);
  for (const auto& [label, members] : groups) {
    if (members.size() < k) {
      throw Error(Errc::degenerate_class,
                  "class " + std::to_string(label) + " has fewer than k rows");
    }
  }

  std::vector<std::vector<std::size_t>> held(k);
  for (auto& [label, members] : groups) {
    Rng rng(derive_seed(seed, "kfold", static_cast<std::uint64_t>(label)));
    rng.shuffle(members);
    // Contiguous slices; the first (n mod k) folds take one extra row.
    const std::size_t base = members.size() / k;
    const std::size_t extra = members.size() % k;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
      std::size_t take = base + (f < extra ? 1 : 0);
      for (std::size_t i = 0; i < take; ++i) held[f].push_back(members[pos++]);
    }
  }

  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> folds;
  folds.reserve(k);
  std::vector<bool> in_fold(table.n_rows());
  for (std::size_t f = 0; f < k; ++f) {
    std::sort(held[f].begin(), held[f].end());
    std::fill(in_fold.begin(), in_fold.end(), false);
    for (std::size_t i : held[f]) in_fold[i] = true;
    std::vector<std::size_t> train;
    train.reserve(table.n_rows() - held[f].size());
    for (std::size_t i = 0; i < table.n_rows(); ++i) {
      if (!in_fold[i]) train.push_back(i);
    }
    folds.emplace_back(std::move(train), held[f]);
  }
  return folds;
}

std::string split_to_json(const SplitIndices& split) {
  nlohmann::ordered_json j;
  j["train"] = split.train;
  j["validation"] = split.validation;
  j["test"] = split.test;
  return j.dump();
}

SplitIndices split_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SplitIndices split;
  split.train = j.at("train").get<std::vector<std::size_t>>();
  split.validation = j.at("validation").get<std::vector<std::size_t>>();
  split.test = j.at("test").get<std::vector<std::size_t>>();
  return split;
}

void save_split(const SplitIndices& split, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");
  out << split_to_json(split) << '\n';
}

SplitIndices load_split(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return split_from_json(buffer.str());
}

}  // namespace treelab
