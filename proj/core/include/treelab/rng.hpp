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

#ifndef TREELAB_RNG_HPP
#define TREELAB_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace treelab {

// Every random decision in the toolkit flows from one root seed through
// derive_seed(root, stream[, index]); there is no global RNG state. The
// engine is std::mt19937_64 (bit-exact across platforms) and all draws go
// through the explicit helpers below, so identical seeds give identical
// results regardless of standard library or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [low, high).
  double next_in(double low, double high) {
    return low + (high - low) * next_unit();
  }

  /// Unbiased uniform integer in [0, bound); bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for a named random stream, e.g. derive_seed(root, "split").
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream);

/// Seed for an indexed stream, e.g. derive_seed(root, "tree", tree_index).
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream,
                          std::uint64_t index);

}  // namespace treelab

#endif  // TREELAB_RNG_HPP
