// Copyright 2026 The quditlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quditlab/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quditlab {

std::vector<double> setting_distribution(const QuditRegister &state,
                                         const MeasurementSetting &setting) {
  QuditRegister rotated = state;
  for (const ReadoutRotation &rot : setting.rotations) {
    rotated.apply(rot.rotation, rot.sites);
  }
  const std::vector<cdouble> &amps = rotated.amplitudes();
  std::vector<double> probs(amps.size());
  for (size_t i = 0; i < amps.size(); i++) {
    probs[i] = std::norm(amps[i]);
  }
  return probs;
}

double setting_exact_mean(const QuditRegister &state,
                          const MeasurementSetting &setting,
                          double *variance) {
  std::vector<double> probs = setting_distribution(state, setting);
  double mean = 0.0;
  double second = 0.0;
  for (size_t i = 0; i < probs.size(); i++) {
    if (probs[i] == 0.0) {
      continue;
    }
    double v = setting.value(state.digits_of(i));
    mean += probs[i] * v;
    second += probs[i] * v * v;
  }
  if (variance != nullptr) {
    *variance = std::max(0.0, second - mean * mean);
  }
  return mean;
}

std::vector<size_t> sample_outcomes(const std::vector<double> &probabilities,
                                    long shots, Philox4x32 &rng) {
  if (shots < 0) {
    throw std::invalid_argument("sample_outcomes: shots must be >= 0");
  }
  std::vector<double> cdf(probabilities.size());
  double acc = 0.0;
  for (size_t i = 0; i < probabilities.size(); i++) {
    acc += probabilities[i];
    cdf[i] = acc;
  }
  if (acc <= 0.0) {
    throw std::runtime_error("sample_outcomes: empty distribution");
  }
  std::vector<size_t> outcomes(static_cast<size_t>(shots));
  for (long s = 0; s < shots; s++) {
    double u = rng.next_double() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    size_t idx = static_cast<size_t>(it - cdf.begin());
    if (idx >= cdf.size()) {
      idx = cdf.size() - 1;
    }
    outcomes[static_cast<size_t>(s)] = idx;
  }
  return outcomes;
}

ShotStats sample_setting(const QuditRegister &state,
                         const MeasurementSetting &setting, long shots,
                         Philox4x32 &rng) {
  if (shots <= 0) {
    throw std::invalid_argument("sample_setting: shots must be positive");
  }
  std::vector<double> probs = setting_distribution(state, setting);
  std::vector<size_t> outcomes = sample_outcomes(probs, shots, rng);
  // Cache values per outcome index: the outcome space is small and values
  // may be reused by many shots.
  std::vector<double> value_cache(probs.size());
  std::vector<bool> cached(probs.size(), false);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (size_t idx : outcomes) {
    if (!cached[idx]) {
      value_cache[idx] = setting.value(state.digits_of(idx));
      cached[idx] = true;
    }
    double v = value_cache[idx];
    sum += v;
    sum_sq += v * v;
  }
  ShotStats stats;
  stats.shots = shots;
  stats.mean = sum / static_cast<double>(shots);
  stats.variance =
      std::max(0.0, sum_sq / static_cast<double>(shots) -
                        stats.mean * stats.mean);
  stats.std_error = std::sqrt(stats.variance / static_cast<double>(shots));
  return stats;
}

}  // namespace quditlab
