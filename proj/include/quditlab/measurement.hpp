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

#ifndef QUDITLAB_MEASUREMENT_HPP
#define QUDITLAB_MEASUREMENT_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quditlab/register.hpp"

namespace quditlab {

/// A basis rotation applied to a group of sites before computational-basis
/// readout (first listed site = most significant sub-index of the matrix).
struct ReadoutRotation {
  std::vector<int> sites;
  Eigen::MatrixXcd rotation;
};

/// One measurement setting: rotations followed by a full computational-basis
/// readout, reduced to a scalar per shot by `value`.
struct MeasurementSetting {
  std::string name;
  std::vector<ReadoutRotation> rotations;
  std::function<double(const std::vector<int> &digits)> value;
};

struct ShotStats {
  double mean = 0.0;
  double variance = 0.0;   // population variance of the per-shot values
  double std_error = 0.0;  // sqrt(variance / shots)
  long shots = 0;
};

/// Outcome distribution of the rotated register (probability per flat basis
/// index).
std::vector<double> setting_distribution(const QuditRegister &state,
                                         const MeasurementSetting &setting);

/// Exact expectation (and optionally the exact per-shot variance) of the
/// setting's value under the outcome distribution.
double setting_exact_mean(const QuditRegister &state,
                          const MeasurementSetting &setting,
                          double *variance = nullptr);

/// Simulated shot noise: samples `shots` outcomes by inverse-CDF lookup on
/// the exact distribution and aggregates the per-shot values. Deterministic
/// for a fixed generator state.
ShotStats sample_setting(const QuditRegister &state,
                         const MeasurementSetting &setting, long shots,
                         Philox4x32 &rng);

/// Samples `shots` flat outcome indices from a distribution.
std::vector<size_t> sample_outcomes(const std::vector<double> &probabilities,
                                    long shots, Philox4x32 &rng);

}  // namespace quditlab

#endif
