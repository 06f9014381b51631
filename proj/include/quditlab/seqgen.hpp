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

#ifndef QUDITLAB_SEQGEN_HPP
#define QUDITLAB_SEQGEN_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "quditlab/register.hpp"

namespace quditlab {

/// A translationally invariant bond-dimension-2 MPS with three physical
/// levels: one 2x2 matrix per physical label.
struct MpsTensors {
  std::array<Eigen::Matrix2cd, 3> a;
};

/// The spin-1 AKLT tensors in the Cartesian basis: A^s = sigma^s / sqrt(3).
MpsTensors aklt_mps_tensors();

/// The 6x2 isometry V |alpha> = sum_{alpha', s} A^s_{alpha' alpha}
/// |alpha', s> that writes one MPS site: the ancilla qubit (up=0, down=1)
/// recoils while the fresh spin (entering in |z> = level 2) acquires the
/// physical label. Output index layout: (ancilla' * 3 + s).
Eigen::MatrixXcd coupling_isometry(const MpsTensors &tensors);

/// Completion of the isometry to a 6x6 unitary on (qubit x qutrit): the
/// columns for input spin level 2 are the isometry columns; the remaining
/// columns are filled by Gram-Schmidt over the canonical basis vectors in
/// index order. Deterministic.
Eigen::MatrixXcd coupling_unitary(const MpsTensors &tensors);

enum class PrepMode {
  exact,    // apply the completed 6x6 coupling unitary (qubit ancilla)
  circuit,  // apply the 27-row ion-native pulse sequence (qutrit ancilla)
};

/// Sequentially prepares an n-spin chain plus ancilla: the ancilla starts in
/// `ancilla_init` (0 = up, 1 = down), every spin starts in |z>, and the
/// coupling acts on (ancilla, spin j) for j = 1..n in order. Returns the
/// full register (ancilla = site 0) before any ancilla measurement.
///
/// With noise_p > 0, a trajectory depolarizing event with probability
/// noise_p per site is applied to both coupled sites after every two-site
/// gate (rng must then be non-null).
QuditRegister prepare_sequential(int n_spins, int ancilla_init, PrepMode mode,
                                 double noise_p = 0.0,
                                 Philox4x32 *rng = nullptr);

struct PreparedBranch {
  QuditRegister spins;  // ancilla removed
  double probability;
};

/// Projects the ancilla onto `outcome` (0 = up, 1 = down) and drops it.
PreparedBranch post_select_ancilla(const QuditRegister &full, int outcome);

/// Unnormalized open-chain MPS amplitudes
///   c(s_1..s_n) = left^T A^{s_1} A^{s_2} ... A^{s_n} right
/// flattened with s_1 as the most significant digit.
std::vector<cdouble> contract_boundary(const MpsTensors &tensors, int n_spins,
                                       const Eigen::Vector2cd &left,
                                       const Eigen::Vector2cd &right);

/// The normalized spin state that sequential preparation with ancilla
/// initialized to `ancilla_init` and measured as `outcome` produces (up to a
/// global phase): boundary vectors are the *flipped* ancilla states,
/// left = e_{1 - ancilla_init}, right = e_{1 - outcome}. This dictionary is
/// fixed by transposing the matrix product with sigma_y A^s sigma_y = -A^s{}^T.
QuditRegister mps_reference_state(int n_spins, int ancilla_init, int outcome);

/// Probability that the ancilla measurement yields `outcome`.
double branch_probability(int n_spins, int ancilla_init, int outcome);

}  // namespace quditlab

#endif
