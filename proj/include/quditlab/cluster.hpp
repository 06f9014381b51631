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

#ifndef QUDITLAB_CLUSTER_HPP
#define QUDITLAB_CLUSTER_HPP

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quditlab/aklt.hpp"  // RabiPoint
#include "quditlab/measurement.hpp"
#include "quditlab/register.hpp"

namespace quditlab {

/// Signed Pauli string on a qubit register; ops[j] in {'I','X','Y','Z'}.
struct PauliString {
  std::string ops;
  double sign = 1.0;
};

PauliString pauli_product(const PauliString &a, const PauliString &b);

void apply_pauli(QuditRegister &qubits, const PauliString &p);
double pauli_expectation(const QuditRegister &qubits, const PauliString &p);

/// Readout setting measuring a single Pauli string (site-local rotations,
/// per-shot value = sign * product of +-1 outcomes on the support).
MeasurementSetting pauli_setting(const PauliString &p);

enum class ClusterMethod {
  cz_ladder,  // |+>^n followed by controlled-Z on every bond
  ms_ladder,  // ion-native: MS(-pi/2, 0) on every bond, then R_x(-pi/2) on
              // both end qubits, then a global R_y(-pi/2)
};

/// Linear cluster state on n qubits. Both methods produce the same state
/// (the ms_ladder compiles to the cz_ladder exactly). With noise_p > 0 a
/// trajectory depolarizing event is applied to both qubits after every
/// two-qubit gate (rng required).
QuditRegister cluster_state(int n_qubits, ClusterMethod method,
                            double noise_p = 0.0, Philox4x32 *rng = nullptr);

/// Generators K_0 = X_0 Z_1, K_j = Z_{j-1} X_j Z_{j+1}, K_{n-1} = Z_{n-2} X_{n-1}.
std::vector<PauliString> cluster_stabilizer_generators(int n_qubits);

/// Mean stabilizer-group expectation = fidelity with the ideal cluster
/// state: (1/2^n) sum over all group elements of <g>.
double stabilizer_group_mean_exhaustive(const QuditRegister &qubits);

/// Monte-Carlo version: mean over `n_samples` uniformly drawn group
/// elements, each evaluated exactly.
ShotStats stabilizer_group_mean_sampled(const QuditRegister &qubits,
                                        long n_samples, Philox4x32 &rng);

/// Bulk cluster Hamiltonian H = -sum_{j=1}^{n-2} Z_{j-1} X_j Z_{j+1}
/// (interior stabilizers only, so the ground space is four-fold degenerate
/// with energy -(n-2)).
Eigen::MatrixXcd cluster_dense_hamiltonian(int n_qubits);
double cluster_energy(const QuditRegister &qubits);

/// Projector onto the lowest eigenvalue space of the bulk Hamiltonian.
Eigen::MatrixXcd cluster_ground_projector(int n_qubits, double tol = 1e-8);

/// Projector onto the span of the four preparable ground states
/// {|C>, Z_0|C>, Z_{n-1}|C>, Z_0 Z_{n-1}|C>}.
Eigen::MatrixXcd cluster_prepared_span_projector(int n_qubits);

/// Bulk/edge correspondence table for the six-qubit chain: each row applies
/// a product of edge-mode X operators (or its stabilizer-equivalent graph
/// form) to the cluster state and reports the mean interior stabilizer
/// expectation and the two end stabilizers.
struct ClusterTableRow {
  std::string label;
  PauliString applied;
  double bulk_mean;    // mean over K_1..K_4
  double left_edge;    // <K_0> = <X_0 Z_1>
  double right_edge;   // <K_5> = <Z_4 X_5>
};
std::vector<ClusterTableRow> bulk_edge_correspondence(
    const QuditRegister &qubits);

/// The anticommuting logical pair operators of the six-qubit chain:
/// P_1 = X_1 X_3 Z_4, P_2 = -X_0 X_1 X_2 X_3 Y_4 Z_5, P_3 = X_0 X_2 X_4 Z_5
/// (0-based sites). They satisfy [P_i, P_j] = 2i eps_{ijk} P_k, and the
/// cluster state has <P_1> = <P_2> = 0, <P_3> = +1.
std::array<PauliString, 3> edge_pair_operators(int n_qubits);

/// Drive exp(-i theta/2 P_1) on the cluster state; reports <P_1>, <P_2>,
/// <P_3> (as x, y, z) and the bulk energy.
std::vector<RabiPoint> cluster_rabi_trajectory(const QuditRegister &initial,
                                               const std::vector<double> &thetas,
                                               double noise_p = 0.0,
                                               Philox4x32 *rng = nullptr);

/// Projecting the interior qubits (1..n-2) of the cluster chain onto the X
/// basis leaves the end pair (0, n-1) in a Bell-like state stabilized by
/// a X_0 Z_{n-1} and b Z_0 X_{n-1}, where the labels are outcome parities
/// a = s_2 s_4 and b = s_1 s_3 (0-based measured sites; s = +-1).
struct BellBranch {
  std::vector<int> outcomes;  // +-1 per interior site
  double probability = 0.0;
  int a = 0, b = 0;           // predicted stabilizer labels
  double x0zn = 0.0, z0xn = 0.0, y0yn = 0.0;
  double fidelity = 0.0;      // with the labeled Bell state
};
std::vector<BellBranch> bell_projection_branches(const QuditRegister &qubits);

/// Samples a single interior X measurement trajectory.
BellBranch bell_projection_sample(const QuditRegister &qubits,
                                  Philox4x32 &rng);

}  // namespace quditlab

#endif
