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

#include "treelab/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "treelab/error.hpp"
#include "treelab/rng.hpp"

namespace treelab {
namespace {

const std::vector<std::string>& feature_schema() {
  static const std::vector<std::string> names = {
      "Age", "Gender", "Ethnicity", "EducationLevel", "BMI",
      "Smoking", "AlcoholConsumption", "PhysicalActivity", "DietQuality",
      "SleepQuality", "FamilyHistoryAlzheimers", "CardiovascularDisease",
      "Diabetes", "Depression", "HeadInjury", "Hypertension", "SystolicBP",
      "DiastolicBP", "CholesterolTotal", "CholesterolLDL", "CholesterolHDL",
      "CholesterolTriglycerides", "MMSE", "FunctionalAssessment",
      "MemoryComplaints", "BehavioralProblems", "ADL", "Confusion",
      "Disorientation", "PersonalityChanges", "DifficultyCompletingTasks",
      "Forgetfulness"};
  return names;
}

double gaussian(Rng& rng, double mean, double stddev) {
  // Box-Muller; u1 in (0,1] to keep the log finite.
  const double u1 = 1.0 - rng.next_unit();
  const double u2 = rng.next_unit();
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
}

double clipped(double v, double lo, double hi) {
  return std::min(hi, std::max(lo, v));
}

double bernoulli(Rng& rng, double p) { return rng.next_unit() < p ? 1.0 : 0.0; }

}  // namespace

Table synthetic_table(const SyntheticOptions& options) {
  if (options.n_rows < 2) {
    throw Error(Errc::empty_input, "synthetic table needs at least 2 rows");
  }
  const auto n_pos = static_cast<std::size_t>(std::llround(
      options.positive_fraction * static_cast<double>(options.n_rows)));

  std::vector<int> labels(options.n_rows, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<long>(n_pos), 1);
  Rng label_rng(derive_seed(options.seed, "synthetic_labels"));
  label_rng.shuffle(labels);

  const auto& names = feature_schema();
  std::vector<double> cells;
  cells.reserve(options.n_rows * names.size());

  Rng rng(derive_seed(options.seed, "synthetic_features"));
  for (std::size_t r = 0; r < options.n_rows; ++r) {
    const bool pos = labels[r] == 1;
    const double systolic = clipped(gaussian(rng, 130, 15), 90, 180);
    const double hdl = clipped(gaussian(rng, 55, 12), 20, 100);
    const double ldl = clipped(gaussian(rng, 125, 30), 50, 200);

    for (const auto& name : names) {
      double v = 0.0;
      if (name == "Age") {
        v = std::floor(rng.next_in(60, 91) + (pos ? 1.5 : 0.0));
      } else if (name == "Gender") {
        v = bernoulli(rng, 0.5);
      } else if (name == "Ethnicity") {
        v = std::floor(rng.next_in(0, 4));
      } else if (name == "EducationLevel") {
        v = std::floor(rng.next_in(0, 4));
      } else if (name == "BMI") {
        v = clipped(gaussian(rng, 27.5, 4.5), 15, 40);
      } else if (name == "Smoking") {
        v = bernoulli(rng, 0.29);
      } else if (name == "AlcoholConsumption") {
        v = clipped(gaussian(rng, 10, 6), 0, 20);
      } else if (name == "PhysicalActivity") {
        v = clipped(gaussian(rng, pos ? 4.4 : 5.2, 2.8), 0, 10);
      } else if (name == "DietQuality") {
        v = clipped(gaussian(rng, 5, 2.9), 0, 10);
      } else if (name == "SleepQuality") {
        v = clipped(gaussian(rng, 7, 1.8), 4, 10);
      } else if (name == "FamilyHistoryAlzheimers") {
        v = bernoulli(rng, pos ? 0.3 : 0.22);
      } else if (name == "CardiovascularDisease") {
        v = bernoulli(rng, 0.14);
      } else if (name == "Diabetes") {
        v = bernoulli(rng, 0.15);
      } else if (name == "Depression") {
        v = bernoulli(rng, 0.2);
      } else if (name == "HeadInjury") {
        v = bernoulli(rng, 0.09);
      } else if (name == "Hypertension") {
        v = bernoulli(rng, 0.15);
      } else if (name == "SystolicBP") {
        v = systolic;
      } else if (name == "DiastolicBP") {
        v = clipped(0.55 * systolic + gaussian(rng, 13, 8), 60, 120);
      } else if (name == "CholesterolTotal") {
        v = clipped(ldl + hdl + gaussian(rng, 45, 15), 150, 300);
      } else if (name == "CholesterolLDL") {
        v = ldl;
      } else if (name == "CholesterolHDL") {
        v = hdl;
      } else if (name == "CholesterolTriglycerides") {
        v = clipped(gaussian(rng, 225, 80), 50, 400);
      } else if (name == "MMSE") {
        v = clipped(gaussian(rng, pos ? 11.5 : 17.5, 4.6), 0, 30);
      } else if (name == "FunctionalAssessment") {
        v = clipped(gaussian(rng, pos ? 3.6 : 6.0, 1.9), 0, 10);
      } else if (name == "MemoryComplaints") {
        v = bernoulli(rng, pos ? 0.52 : 0.12);
      } else if (name == "BehavioralProblems") {
        v = bernoulli(rng, pos ? 0.33 : 0.1);
      } else if (name == "ADL") {
        v = clipped(gaussian(rng, pos ? 3.8 : 6.1, 1.9), 0, 10);
      } else if (name == "Confusion") {
        v = bernoulli(rng, pos ? 0.26 : 0.18);
      } else if (name == "Disorientation") {
        v = bernoulli(rng, pos ? 0.2 : 0.15);
      } else if (name == "PersonalityChanges") {
        v = bernoulli(rng, pos ? 0.17 : 0.14);
      } else if (name == "DifficultyCompletingTasks") {
        v = bernoulli(rng, pos ? 0.2 : 0.15);
      } else if (name == "Forgetfulness") {
        v = bernoulli(rng, pos ? 0.35 : 0.28);
      }
      cells.push_back(v);
    }
  }

  return Table(names, std::move(cells), std::move(labels));
}

void write_synthetic_csv(const SyntheticOptions& options,
                         const std::string& path) {
  const Table table = synthetic_table(options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write '" + path + "'");

  out << "PatientID";
  for (const auto& name : table.column_names()) out << ',' << name;
  out << ",Diagnosis,DoctorInCharge\n";

  char buf[32];
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    out << (4751 + r);
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", table.at(r, c));
      out << ',' << buf;
    }
    out << ',' << table.labels()[r] << ",XXXConfid\n";
  }
}

}  // namespace treelab
