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

#ifndef QUDITLAB_AKLT_HPP
#define QUDITLAB_AKLT_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "quditlab/measurement.hpp"
#include "quditlab/register.hpp"

namespace quditlab {

/// Dense open-chain AKLT Hamiltonian
///   H = sum_j [ 1/2 S_j.S_{j+1} + 1/6 (S_j.S_{j+1})^2 + 1/3 ]
/// on n qutrits (3^n x 3^n). Each bond term is a projector, so H >= 0 and
/// the open chain has a four-fold degenerate zero-energy ground space.
/// Guarded to n <= 8.
Eigen::MatrixXcd aklt_dense_hamiltonian(int n_spins);

/// <H> evaluated bond-by-bond on the register (no dense H needed).
double aklt_energy(const QuditRegister &spins);

/// Projector onto the zero-energy space of the dense Hamiltonian
/// (eigenvalues below `tol`).
Eigen::MatrixXcd aklt_kernel_projector(int n_spins, double tol = 1e-8);

/// Projector onto the span of the four sequentially prepared states
/// (ancilla init x outcome in {0,1}^2).
Eigen::MatrixXcd prepared_span_projector(int n_spins);

/// Per-site magnetization <S^a_j>, indexed [site][axis x,y,z].
std::vector<std::array<double, 3>> local_spin_profile(
    const QuditRegister &spins);

/// C_{ab} = <S^a_i S^b_j> for a,b in {x,y,z}.
Eigen::Matrix3d two_spin_correlation(const QuditRegister &spins, int i, int j);

/// Hidden (string) order between the chain ends. The interior sites enter
/// either through a product of per-site exponentials,
///   sum_exponent:     prod_k (I - 2 (S^a_k)^2)        [= prod_k e^{i pi S^a_k}]
/// or through one exponential of the product operator,
///   product_exponent: I - 2 prod_k (S^a_k)^2          [= e^{i pi prod_k S^a_k}].
enum class StringForm { sum_exponent, product_exponent };

double string_order_exact(const QuditRegister &spins, char axis,
                          StringForm form = StringForm::sum_exponent);
MeasurementSetting string_order_setting(int n_spins, char axis,
                                        StringForm form);
ShotStats string_order_sampled(const QuditRegister &spins, char axis,
                               StringForm form, long shots, Philox4x32 &rng);

/// Eigenbasis readout of a single-site spin component: `rotation` maps the
/// state to the eigenbasis (apply before Z readout), `values[d]` is the
/// eigenvalue announced by digit d.
struct AxisReadout {
  Eigen::Matrix3cd rotation;
  std::array<double, 3> values;
};
AxisReadout spin1_axis_readout(char axis);

/// Fractionalized spin-1/2 algebra of the left chain edge, supported on the
/// two leftmost spins. The three operators are Hermitian, close under
/// [X, Y] = 2iZ (cyclically), and square to the projector onto their common
/// four-dimensional support.
struct EdgeAlgebra {
  Eigen::MatrixXcd x, y, z;  // 9x9
};
EdgeAlgebra left_edge_algebra();

struct RabiPoint {
  double theta = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;  // <X_L>, <Y_L>, <Z_L>
  double energy = 0.0;               // <H>
};

/// Edge drive: psi(theta) = exp(-i theta/2 X_L) psi, X_L acting on the two
/// leftmost spins. Rotates the edge triple by theta.
QuditRegister edge_rotated_state(const QuditRegister &initial, double theta,
                                 double noise_p = 0.0,
                                 Philox4x32 *rng = nullptr);
std::vector<RabiPoint> edge_rabi_trajectory(const QuditRegister &initial,
                                            const std::vector<double> &thetas,
                                            double noise_p = 0.0,
                                            Philox4x32 *rng = nullptr);

/// Bulk drive: psi(theta) = exp(-i theta/2 sum_j S^x_j) psi. Rotates the
/// edge triple by theta / 2 (half the edge-drive angle).
QuditRegister bulk_rotated_state(const QuditRegister &initial, double theta);
std::vector<RabiPoint> bulk_rabi_trajectory(const QuditRegister &initial,
                                            const std::vector<double> &thetas);

/// Readout setting for the edge Z component (eigenbasis of Z_L on the two
/// leftmost spins).
MeasurementSetting edge_z_setting(int n_spins);

/// Shot-based estimator of <H> from nine global readout settings: three
/// single-axis settings covering the Heisenberg and squared diagonal parts,
/// and six two-axis settings (axis pair x bond parity) covering the
/// symmetrized cross terms on disjoint alternating bonds, plus the additive
/// constant (n - 1)/3.
std::vector<MeasurementSetting> energy_settings(int n_spins);

struct SettingEstimate {
  std::string name;
  ShotStats stats;
};

struct EnergyEstimate {
  double energy = 0.0;
  double std_error = 0.0;
  std::vector<SettingEstimate> settings;
};

EnergyEstimate nine_setting_energy_sampled(const QuditRegister &spins,
                                           long shots_per_setting,
                                           Philox4x32 &rng);
double nine_setting_energy_exact(const QuditRegister &spins);

}  // namespace quditlab

#endif
