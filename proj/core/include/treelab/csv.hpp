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

#ifndef TREELAB_CSV_HPP
#define TREELAB_CSV_HPP

#include <string>
#include <vector>

#include "treelab/table.hpp"

namespace treelab {

struct LoadOptions {
  /// Parse empty cells as missing (NaN) instead of raising MissingValue.
  /// The values are filled later by a train-fitted imputer.
  bool allow_missing = false;
};

/// Load an RFC-4180 CSV (header row mandatory, UTF-8). Columns listed in
/// drop_columns are removed before numeric parsing, labels come from
/// target_column, and the row order of the file is preserved.
Table load_csv(const std::string& path, const std::string& target_column,
               const std::vector<std::string>& drop_columns,
               const LoadOptions& options = {});

/// Same, reading from an already-loaded buffer (used by tests).
Table load_csv_text(const std::string& text, const std::string& target_column,
                    const std::vector<std::string>& drop_columns,
                    const LoadOptions& options = {});

/// Write features plus the label column (named target_column) with full
/// double precision, so that load_csv(save_csv(t)) reproduces t bit-exactly.
void save_csv(const Table& table, const std::string& path,
              const std::string& target_column);

std::string table_to_csv(const Table& table, const std::string& target_column);

}  // namespace treelab

#endif  // TREELAB_CSV_HPP
