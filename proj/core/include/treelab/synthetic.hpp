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

#ifndef TREELAB_SYNTHETIC_HPP
#define TREELAB_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "treelab/table.hpp"

namespace treelab {

/// Seeded generator for a clinical-assessment-shaped table: 32 numeric
/// feature columns (demographics, lifestyle, vitals, labs, cognitive scores)
/// and a binary Diagnosis label. Cognitive and functional columns (MMSE,
/// FunctionalAssessment, ADL, MemoryComplaints, BehavioralProblems) carry
/// the signal; the rest are label-independent noise. The default sizes match
/// the published class balance, so the full test suite runs without any
/// external download.
struct SyntheticOptions {
  std::size_t n_rows = 2149;
  double positive_fraction = 760.0 / 2149.0;
  std::uint64_t seed = 7;
};

Table synthetic_table(const SyntheticOptions& options = {});

/// CSV with PatientID / DoctorInCharge administrative columns wrapped around
/// the features, mirroring the raw file layout the loader is configured for.
void write_synthetic_csv(const SyntheticOptions& options,
                         const std::string& path);

}  // namespace treelab

#endif  // TREELAB_SYNTHETIC_HPP
