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

#ifndef TREELAB_TABLE_HPP
#define TREELAB_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace treelab {

/// Column-named numeric feature matrix with an optional binary label vector.
///
/// The universal data carrier: immutable after construction and safe to
/// share across threads. Cells are stored row-major. NaN cells are rejected
/// unless the table is explicitly constructed with allow_missing (the
/// pre-imputation state); infinities are never allowed. Row ids, when
/// present, are carried for traceability only and never reach a model.
class Table {
 public:
  Table() = default;

  Table(std::vector<std::string> column_names, std::vector<double> cells,
        std::vector<int> labels = {}, std::vector<std::string> row_ids = {},
        bool allow_missing = false);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return column_names_.size(); }

  const std::vector<std::string>& column_names() const {
    return column_names_;
  }

  double at(std::size_t row, std::size_t col) const {
    return cells_[row * column_names_.size() + col];
  }

  std::span<const double> row(std::size_t r) const {
    return {cells_.data() + r * column_names_.size(), column_names_.size()};
  }

  const std::vector<double>& cells() const { return cells_; }

  std::optional<std::size_t> column_index(const std::string& name) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }

  bool has_row_ids() const { return !row_ids_.empty(); }
  const std::vector<std::string>& row_ids() const { return row_ids_; }

  bool allows_missing() const { return allow_missing_; }
  bool has_missing() const;

  /// Copy of one column's values.
  std::vector<double> column(std::size_t col) const;

  /// Sub-table with the given rows, in the given order.
  Table select_rows(std::span<const std::size_t> indices) const;

  /// Sub-table keeping the given columns, in the given order.
  Table select_columns(const std::vector<std::size_t>& cols) const;

 private:
  std::vector<std::string> column_names_;
  std::vector<double> cells_;  // row-major, n_rows_ x column_names_.size()
  std::size_t n_rows_ = 0;
  std::vector<int> labels_;
  std::vector<std::string> row_ids_;
  bool allow_missing_ = false;
};

/// Count of rows per class label. Throws NoLabels when labels are absent.
std::map<int, std::size_t> class_counts(const Table& table);

/// Order-sensitive content hash over names, cells, and labels; used to pin
/// fitted statistics to the exact training data they were computed from.
std::uint64_t table_fingerprint(const Table& table);

/// table_fingerprint rendered as a fixed-width hex string.
std::string table_fingerprint_hex(const Table& table);

}  // namespace treelab

#endif  // TREELAB_TABLE_HPP
