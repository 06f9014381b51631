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

#ifndef QUDITLAB_TOMOGRAPHY_HPP
#define QUDITLAB_TOMOGRAPHY_HPP

#include <array>

#include <Eigen/Dense>

#include "quditlab/register.hpp"

namespace quditlab {

/// The four mutually unbiased bases of a qutrit (columns are the basis
/// kets): the computational basis and three Fourier-type bases built from
/// the cube root of unity. Any two kets from different bases satisfy
/// |<a|b>|^2 = 1/3.
std::array<Eigen::Matrix3cd, 4> mub_bases();

/// Number of readout settings for n qutrits: 4^n.
int num_tomography_settings(int n_qutrits);

/// Per-site basis choices of a setting (most significant site first).
std::vector<int> tomography_setting_tuple(int n_qutrits, int setting_index);

/// Exact outcome probabilities, one row per setting (4^n rows, 3^n columns).
Eigen::MatrixXd tomography_exact_frequencies(const QuditRegister &state);

/// Empirical outcome frequencies from `shots_per_setting` samples per
/// setting, using one substream per setting.
Eigen::MatrixXd tomography_sampled_frequencies(const QuditRegister &state,
                                               long shots_per_setting,
                                               Philox4x32 &rng);

/// Linear inversion: the unique least-squares density operator matching the
/// frequencies. Exact frequencies reproduce the state exactly; sampled
/// frequencies may yield a non-positive matrix.
Eigen::MatrixXcd tomography_linear(const Eigen::MatrixXd &frequencies,
                                   int n_qutrits);

/// Iterative maximum-likelihood reconstruction (R rho R fixed-point
/// iteration with trace renormalization). Always positive semidefinite.
Eigen::MatrixXcd tomography_mle(const Eigen::MatrixXd &frequencies,
                                int n_qutrits, int max_iterations = 20000,
                                double tolerance = 1e-10);

/// Clips negative eigenvalues and renormalizes the trace.
Eigen::MatrixXcd project_to_density_matrix(const Eigen::MatrixXcd &rho);

/// (1/2) || a - b ||_1 for Hermitian a, b.
double trace_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

/// <psi| rho |psi>.
double fidelity_with_state(const Eigen::MatrixXcd &rho,
                           const QuditRegister &state);

/// Density matrix of a pure register state.
Eigen::MatrixXcd density_of(const QuditRegister &state);

}  // namespace quditlab

#endif
