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

#include "treelab/table.hpp"

#include <cmath>
#include <cstring>
#include <set>

#include "treelab/error.hpp"

namespace treelab {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::missing_target: return "MissingTarget";
    case Errc::non_numeric_cell: return "NonNumericCell";
    case Errc::missing_value: return "MissingValue";
    case Errc::no_labels: return "NoLabels";
    case Errc::degenerate_class: return "DegenerateClass";
    case Errc::bad_fraction: return "BadFraction";
    case Errc::missing_column: return "MissingColumn";
    case Errc::schema_mismatch: return "SchemaMismatch";
    case Errc::too_few_minority: return "TooFewMinority";
    case Errc::single_class: return "SingleClass";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::empty_input: return "EmptyInput";
    case Errc::single_class_labels: return "SingleClassLabels";
    case Errc::empty_node: return "EmptyNode";
    case Errc::unfitted_model: return "UnfittedModel";
    case Errc::missing_cover: return "MissingCover";
    case Errc::empty_attribution: return "EmptyAttribution";
    case Errc::no_members: return "NoMembers";
    case Errc::config_error: return "ConfigError";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

Table::Table(std::vector<std::string> column_names, std::vector<double> cells,
             std::vector<int> labels, std::vector<std::string> row_ids,
             bool allow_missing)
    : column_names_(std::move(column_names)),
      cells_(std::move(cells)),
      labels_(std::move(labels)),
      row_ids_(std::move(row_ids)),
      allow_missing_(allow_missing) {
  const std::size_t n_cols = column_names_.size();
  if (n_cols == 0) {
    if (!cells_.empty()) {
      throw Error(Errc::schema_mismatch, "cells present but no columns named");
    }
    n_rows_ = 0;
  } else {
    if (cells_.size() % n_cols != 0) {
      throw Error(Errc::schema_mismatch,
                  "cell count is not a multiple of the column count");
    }
    n_rows_ = cells_.size() / n_cols;
  }

  std::set<std::string> seen;
  for (const auto& name : column_names_) {
    if (!seen.insert(name).second) {
      throw Error(Errc::schema_mismatch, "duplicate column name '" + name + "'");
    }
  }

  for (double v : cells_) {
    if (std::isinf(v)) {
      throw Error(Errc::non_numeric_cell, "infinite cell value");
    }
    if (std::isnan(v) && !allow_missing_) {
      throw Error(Errc::missing_value,
                  "NaN cell in a table that does not allow missing values");
    }
  }

  if (!labels_.empty()) {
    if (labels_.size() != n_rows_) {
      throw Error(Errc::length_mismatch, "label count differs from row count");
    }
    for (int y : labels_) {
      if (y != 0 && y != 1) {
        throw Error(Errc::schema_mismatch, "labels must be 0 or 1");
      }
    }
  }
  if (!row_ids_.empty() && row_ids_.size() != n_rows_) {
    throw Error(Errc::length_mismatch, "row id count differs from row count");
  }
}

std::optional<std::size_t> Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < column_names_.size(); ++i) {
    if (column_names_[i] == name) return i;
  }
  return std::nullopt;
}

bool Table::has_missing() const {
  for (double v : cells_) {
    if (std::isnan(v)) return true;
  }
  return false;
}

std::vector<double> Table::column(std::size_t col) const {
  std::vector<double> out(n_rows_);
  for (std::size_t r = 0; r < n_rows_; ++r) out[r] = at(r, col);
  return out;
}

Table Table::select_rows(std::span<const std::size_t> indices) const {
  const std::size_t n_cols = column_names_.size();
  std::vector<double> cells;
  cells.reserve(indices.size() * n_cols);
  std::vector<int> labels;
  if (has_labels()) labels.reserve(indices.size());
  std::vector<std::string> ids;
  if (has_row_ids()) ids.reserve(indices.size());

  for (std::size_t r : indices) {
    auto row_span = row(r);
    cells.insert(cells.end(), row_span.begin(), row_span.end());
    if (has_labels()) labels.push_back(labels_[r]);
    if (has_row_ids()) ids.push_back(row_ids_[r]);
  }
  return Table(column_names_, std::move(cells), std::move(labels),
               std::move(ids), allow_missing_);
}

Table Table::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<std::string> names;
  names.reserve(cols.size());
  for (std::size_t c : cols) names.push_back(column_names_[c]);

  std::vector<double> cells;
  cells.reserve(n_rows_ * cols.size());
  for (std::size_t r = 0; r < n_rows_; ++r) {
    for (std::size_t c : cols) cells.push_back(at(r, c));
  }
  return Table(std::move(names), std::move(cells), labels_, row_ids_,
               allow_missing_);
}

std::map<int, std::size_t> class_counts(const Table& table) {
  if (!table.has_labels()) {
    throw Error(Errc::no_labels, "class_counts requires labels");
  }
  std::map<int, std::size_t> counts;
  for (int y : table.labels()) ++counts[y];
  return counts;
}

namespace {

inline std::uint64_t fnv1a_step(std::uint64_t hash, const void* data,
                                std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

std::uint64_t table_fingerprint(const Table& table) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const auto& name : table.column_names()) {
    hash = fnv1a_step(hash, name.data(), name.size());
    hash = fnv1a_step(hash, ";", 1);
  }
  if (!table.cells().empty()) {
    hash = fnv1a_step(hash, table.cells().data(),
                      table.cells().size() * sizeof(double));
  }
  for (int y : table.labels()) {
    hash = fnv1a_step(hash, &y, sizeof(y));
  }
  return hash;
}

std::string table_fingerprint_hex(const Table& table) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = table_fingerprint(table);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace treelab
