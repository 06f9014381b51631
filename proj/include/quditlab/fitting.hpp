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

#ifndef QUDITLAB_FITTING_HPP
#define QUDITLAB_FITTING_HPP

#include <cmath>
#include <vector>

namespace quditlab {

/// Result of fitting y = amplitude * cos(theta + phase) * exp(-decay_rate *
/// theta) + offset. After normalization amplitude >= 0 and phase lies in
/// (-pi, pi].
struct DampedCosineFit {
  double amplitude = 0.0;
  double phase = 0.0;
  double decay_rate = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;

  double contrast() const { return std::abs(amplitude); }
  double evaluate(double theta) const {
    return amplitude * std::cos(theta + phase) *
               std::exp(-decay_rate * theta) +
           offset;
  }
};

/// Levenberg-Marquardt fit with an analytic Jacobian. Initial amplitude and
/// phase come from a linear least-squares projection onto {cos, sin}; the
/// decay rate starts at zero. Requires at least 5 points spanning at least
/// 2 pi in theta.
DampedCosineFit fit_damped_cosine(const std::vector<double> &thetas,
                                  const std::vector<double> &values);

}  // namespace quditlab

#endif
