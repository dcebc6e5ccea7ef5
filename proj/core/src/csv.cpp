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

#include "treelab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "treelab/error.hpp"

namespace treelab {
namespace {

// RFC-4180 field splitting: quoted fields may contain commas, newlines, and
// doubled quotes. Records end at an unquoted LF or CRLF.
std::vector<std::vector<std::string>> parse_records(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool any_char = false;

  auto end_field = [&] {
    fields.push_back(field);
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(fields));
    fields.clear();
    any_char = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      any_char = true;
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        any_char = true;
        break;
      case ',':
        end_field();
        any_char = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any_char || !field.empty() || !fields.empty()) end_record();
        break;
      default:
        field.push_back(c);
        any_char = true;
        break;
    }
  }
  if (in_quotes) {
    throw Error(Errc::io_error, "unterminated quoted CSV field");
  }
  if (any_char || !field.empty() || !fields.empty()) end_record();
  return records;
}

bool parse_number(const std::string& field, double* out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0') return false;
  if (std::isinf(value)) return false;
  *out = value;
  return true;
}

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_full(double v) {
  if (std::isnan(v)) return "";  // missing cells round-trip as empty fields
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Table load_csv_text(const std::string& text, const std::string& target_column,
                    const std::vector<std::string>& drop_columns,
                    const LoadOptions& options) {
  auto records = parse_records(text);
  if (records.empty()) {
    throw Error(Errc::io_error, "CSV has no header row");
  }
  const auto& header = records.front();

  std::size_t target_pos = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == target_column) target_pos = i;
  }
  if (target_pos == header.size()) {
    throw Error(Errc::missing_target,
                "target column '" + target_column + "' not in header");
  }

  std::vector<bool> dropped(header.size(), false);
  for (const auto& name : drop_columns) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) dropped[i] = true;
    }
  }
  dropped[target_pos] = true;  // target parsed separately

  std::vector<std::string> feature_names;
  std::vector<std::size_t> feature_pos;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!dropped[i]) {
      feature_names.push_back(header[i]);
      feature_pos.push_back(i);
    }
  }

  std::vector<double> cells;
  cells.reserve((records.size() - 1) * feature_names.size());
  std::vector<int> labels;
  labels.reserve(records.size() - 1);

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != header.size()) {
      throw Error(Errc::io_error, "row " + std::to_string(r) + " has " +
                                      std::to_string(rec.size()) +
                                      " fields, header has " +
                                      std::to_string(header.size()));
    }
    for (std::size_t k = 0; k < feature_pos.size(); ++k) {
      const std::string& field = rec[feature_pos[k]];
      if (field.empty()) {
        if (!options.allow_missing) {
          throw Error(Errc::missing_value,
                      "empty cell at row " + std::to_string(r) + ", column '" +
                          feature_names[k] + "'");
        }
        cells.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double value;
      if (!parse_number(field, &value)) {
        throw Error(Errc::non_numeric_cell,
                    "cell '" + field + "' at row " + std::to_string(r) +
                        ", column '" + feature_names[k] +
                        "' is not a number");
      }
      cells.push_back(value);
    }

    const std::string& label_field = rec[target_pos];
    double label_value;
    if (label_field.empty() || !parse_number(label_field, &label_value) ||
        (label_value != 0.0 && label_value != 1.0)) {
      throw Error(Errc::non_numeric_cell,
                  "cell '" + label_field + "' at row " + std::to_string(r) +
                      ", column '" + target_column + "' is not a 0/1 label");
    }
    labels.push_back(static_cast<int>(label_value));
  }

  return Table(std::move(feature_names), std::move(cells), std::move(labels),
               {}, options.allow_missing);
}

Table load_csv(const std::string& path, const std::string& target_column,
               const std::vector<std::string>& drop_columns,
               const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_csv_text(buffer.str(), target_column, drop_columns, options);
}

std::string table_to_csv(const Table& table, const std::string& target_column) {
  std::string out;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c) out.push_back(',');
    out += csv_escape(table.column_names()[c]);
  }
  if (table.has_labels()) {
    if (table.n_cols()) out.push_back(',');
    out += csv_escape(target_column);
  }
  out.push_back('\n');

  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
      if (c) out.push_back(',');
      out += format_full(table.at(r, c));
    }
    if (table.has_labels()) {
      if (table.n_cols()) out.push_back(',');
      out += std::to_string(table.labels()[r]);
    }
    out.push_back('\n');
  }
  return out;
}

void save_csv(const Table& table, const std::string& path,
              const std::string& target_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io_error, "cannot write '" + path + "'");
  }
  out << table_to_csv(table, target_column);
}

}  // namespace treelab
