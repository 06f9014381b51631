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

#include "quditlab/fitting.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>

namespace quditlab {

namespace {

double sum_squared_residuals(const std::vector<double> &thetas,
                             const std::vector<double> &values,
                             const Eigen::Vector4d &p) {
  double ssr = 0.0;
  for (size_t i = 0; i < thetas.size(); i++) {
    double f = p(0) * std::cos(thetas[i] + p(1)) * std::exp(-p(2) * thetas[i]) +
               p(3);
    double r = values[i] - f;
    ssr += r * r;
  }
  return ssr;
}

}  // namespace

DampedCosineFit fit_damped_cosine(const std::vector<double> &thetas,
                                  const std::vector<double> &values) {
  if (thetas.size() != values.size()) {
    throw std::invalid_argument("fit_damped_cosine: size mismatch");
  }
  if (thetas.size() < 5) {
    throw std::invalid_argument("fit_damped_cosine: need at least 5 points");
  }
  auto [min_it, max_it] = std::minmax_element(thetas.begin(), thetas.end());
  if (*max_it - *min_it < 2.0 * M_PI - 1e-9) {
    throw std::invalid_argument(
        "fit_damped_cosine: theta range must span at least 2 pi");
  }
  size_t n = thetas.size();

  // Linear initializer: y - mean ~ a cos(theta) + b sin(theta).
  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= static_cast<double>(n);
  Eigen::MatrixXd basis(n, 2);
  Eigen::VectorXd rhs(n);
  for (size_t i = 0; i < n; i++) {
    basis(static_cast<Eigen::Index>(i), 0) = std::cos(thetas[i]);
    basis(static_cast<Eigen::Index>(i), 1) = std::sin(thetas[i]);
    rhs(static_cast<Eigen::Index>(i)) = values[i] - mean;
  }
  Eigen::Vector2d ab =
      (basis.transpose() * basis).ldlt().solve(basis.transpose() * rhs);
  Eigen::Vector4d p;
  p(0) = std::sqrt(ab(0) * ab(0) + ab(1) * ab(1));
  p(1) = std::atan2(-ab(1), ab(0));
  p(2) = 0.0;
  p(3) = mean;

  double lambda = 1e-3;
  double ssr = sum_squared_residuals(thetas, values, p);
  DampedCosineFit fit;
  int iter = 0;
  const int max_iter = 200;
  for (; iter < max_iter; iter++) {
    Eigen::MatrixXd jac(n, 4);
    Eigen::VectorXd resid(n);
    for (size_t i = 0; i < n; i++) {
      double env = std::exp(-p(2) * thetas[i]);
      double cosv = std::cos(thetas[i] + p(1));
      double sinv = std::sin(thetas[i] + p(1));
      double f = p(0) * cosv * env + p(3);
      resid(static_cast<Eigen::Index>(i)) = values[i] - f;
      jac(static_cast<Eigen::Index>(i), 0) = cosv * env;
      jac(static_cast<Eigen::Index>(i), 1) = -p(0) * sinv * env;
      jac(static_cast<Eigen::Index>(i), 2) = -thetas[i] * p(0) * cosv * env;
      jac(static_cast<Eigen::Index>(i), 3) = 1.0;
    }
    Eigen::Matrix4d jtj = jac.transpose() * jac;
    Eigen::Vector4d jtr = jac.transpose() * resid;
    Eigen::Matrix4d damped = jtj;
    for (int d = 0; d < 4; d++) {
      damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
    }
    Eigen::Vector4d step = damped.ldlt().solve(jtr);
    Eigen::Vector4d candidate = p + step;
    double candidate_ssr = sum_squared_residuals(thetas, values, candidate);
    if (candidate_ssr < ssr) {
      double improvement = ssr - candidate_ssr;
      p = candidate;
      ssr = candidate_ssr;
      lambda = std::max(lambda / 3.0, 1e-12);
      if (step.norm() < 1e-12 || improvement < 1e-15 * (1.0 + ssr)) {
        fit.converged = true;
        iter++;
        break;
      }
    } else {
      lambda *= 4.0;
      if (lambda > 1e12) {
        fit.converged = true;  // stuck at a (local) minimum
        iter++;
        break;
      }
    }
  }

  // Canonical form: non-negative amplitude, phase in (-pi, pi].
  if (p(0) < 0.0) {
    p(0) = -p(0);
    p(1) += M_PI;
  }
  p(1) = std::remainder(p(1), 2.0 * M_PI);
  if (p(1) <= -M_PI) {
    p(1) += 2.0 * M_PI;
  }
  fit.amplitude = p(0);
  fit.phase = p(1);
  fit.decay_rate = p(2);
  fit.offset = p(3);
  fit.residual_rms = std::sqrt(ssr / static_cast<double>(n));
  fit.iterations = iter;
  return fit;
}

}  // namespace quditlab
