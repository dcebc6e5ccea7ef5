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

#ifndef TREELAB_ERROR_HPP
#define TREELAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace treelab {

/// Machine-readable failure categories for every domain error treelab raises.
enum class Errc {
  missing_target,
  non_numeric_cell,
  missing_value,
  no_labels,
  degenerate_class,
  bad_fraction,
  missing_column,
  schema_mismatch,
  too_few_minority,
  single_class,
  length_mismatch,
  empty_input,
  single_class_labels,
  empty_node,
  unfitted_model,
  missing_cover,
  empty_attribution,
  no_members,
  config_error,
  io_error,
};

std::string_view errc_name(Errc code);

/// Domain error carrying a category plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace treelab

#endif  // TREELAB_ERROR_HPP
