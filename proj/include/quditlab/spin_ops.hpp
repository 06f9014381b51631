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

#ifndef QUDITLAB_SPIN_OPS_HPP
#define QUDITLAB_SPIN_OPS_HPP

#include <Eigen/Dense>

namespace quditlab {

/// Spin-1 operators in the Cartesian ("xyz") single-site basis
/// {|x>, |y>, |z>} = levels {0, 1, 2}, defined by S^a |b> = i eps_{abc} |c>.
/// In this basis (S^a)_{bc} = -i eps_{abc}; each operator has eigenvalues
/// {+1, 0, -1} and S^a |a> = 0.
Eigen::Matrix3cd spin1_x();
Eigen::Matrix3cd spin1_y();
Eigen::Matrix3cd spin1_z();

/// axis in {'x','y','z'}.
Eigen::Matrix3cd spin1_axis(char axis);

/// Pauli matrices (qubit levels {0,1} = {up, down}).
Eigen::Matrix2cd pauli_x();
Eigen::Matrix2cd pauli_y();
Eigen::Matrix2cd pauli_z();
Eigen::Matrix2cd pauli_axis(char axis);

/// Heisenberg coupling S_1 . S_2 as a 9x9 matrix on two qutrits.
Eigen::MatrixXcd spin_dot();

/// Two-site term h = (1/2) S1.S2 + (1/6) (S1.S2)^2 + 1/3 of the spin-1
/// AKLT chain. h is the projector onto the total-spin-2 subspace of the
/// bond: eigenvalues are 0 (x4) and 1 (x5).
Eigen::MatrixXcd aklt_bond_term();

/// Symmetrized cross term T^{ab} = (S^a S^b) (x) (S^a S^b)
///                               + (S^b S^a) (x) (S^b S^a)
/// on two qutrits; together with the diagonal terms a==b these build up
/// (S1.S2)^2. Used by the shot-based energy estimator.
Eigen::MatrixXcd spin_cross_term(char axis_a, char axis_b);

}  // namespace quditlab

#endif
