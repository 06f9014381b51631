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

#include "quditlab/aklt.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "quditlab/gates.hpp"
#include "quditlab/seqgen.hpp"
#include "quditlab/spin_ops.hpp"

namespace quditlab {

namespace {

const std::complex<double> kI(0.0, 1.0);

void check_spin_register(const QuditRegister &spins, const char *what) {
  for (int s = 0; s < spins.num_sites(); s++) {
    if (spins.dim(s) != 3) {
      throw std::invalid_argument(std::string(what) +
                                  ": expected an all-qutrit register");
    }
  }
}

void check_axis(char axis, const char *what) {
  if (axis != 'x' && axis != 'y' && axis != 'z') {
    throw std::invalid_argument(std::string(what) +
                                ": axis must be 'x', 'y' or 'z'");
  }
}

/// <psi| O_1 (x) ... (x) O_n |psi> for per-site 3x3 factors (identity where
/// the entry is nullptr).
cdouble product_operator_expectation(
    const QuditRegister &spins,
    const std::vector<const Eigen::Matrix3cd *> &factors) {
  QuditRegister tmp = spins;
  for (int j = 0; j < spins.num_sites(); j++) {
    if (factors[static_cast<size_t>(j)] != nullptr) {
      tmp.apply(*factors[static_cast<size_t>(j)], {j});
    }
  }
  return spins.inner(tmp);
}

/// Normalized basis vectors of the edge-algebra support on two qutrits:
/// the symmetric singlet-like combination u and the three antisymmetric
/// pair differences v_a = (1/sqrt(2)) eps_{abc} |b c>.
void edge_support_vectors(Eigen::VectorXcd &u, Eigen::VectorXcd &vx,
                          Eigen::VectorXcd &vy, Eigen::VectorXcd &vz) {
  auto ket = [](int a, int b) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    v(a * 3 + b) = 1.0;
    return v;
  };
  double s2 = std::sqrt(2.0);
  double s3 = std::sqrt(3.0);
  u = (ket(0, 0) + ket(1, 1) + ket(2, 2)) / s3;
  vx = (ket(1, 2) - ket(2, 1)) / s2;
  vy = (ket(2, 0) - ket(0, 2)) / s2;
  vz = (ket(0, 1) - ket(1, 0)) / s2;
}

Eigen::MatrixXcd hermitian_pair(const Eigen::VectorXcd &a,
                                const Eigen::VectorXcd &b,
                                const Eigen::VectorXcd &c,
                                const Eigen::VectorXcd &d) {
  // a b^dag + i c d^dag + h.c.
  Eigen::MatrixXcd m = a * b.adjoint() + kI * c * d.adjoint();
  return m + m.adjoint().eval();
}

struct BondReadout {
  Eigen::MatrixXcd rotation;     // 9x9, maps to the eigenbasis
  Eigen::VectorXd values;        // eigenvalue per joint digit
};

BondReadout bond_readout(const Eigen::MatrixXcd &op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("bond_readout: eigendecomposition failed");
  }
  BondReadout r;
  r.rotation = es.eigenvectors().adjoint();
  r.values = es.eigenvalues();
  return r;
}

}  // namespace

Eigen::MatrixXcd aklt_dense_hamiltonian(int n_spins) {
  if (n_spins < 2 || n_spins > 8) {
    throw std::invalid_argument(
        "aklt_dense_hamiltonian: supported for 2..8 spins");
  }
  Eigen::MatrixXcd bond = aklt_bond_term();
  size_t dim = 1;
  for (int j = 0; j < n_spins; j++) {
    dim *= 3;
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (int j = 0; j + 1 < n_spins; j++) {
    Eigen::MatrixXcd term =
        Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n_spins;) {
      if (k == j) {
        term = Eigen::kroneckerProduct(term, bond).eval();
        k += 2;
      } else {
        term = Eigen::kroneckerProduct(term, Eigen::MatrixXcd::Identity(3, 3))
                   .eval();
        k += 1;
      }
    }
    h += term;
  }
  return h;
}

double aklt_energy(const QuditRegister &spins) {
  check_spin_register(spins, "aklt_energy");
  if (spins.num_sites() < 2) {
    throw std::invalid_argument("aklt_energy: need at least two spins");
  }
  Eigen::MatrixXcd bond = aklt_bond_term();
  double e = 0.0;
  for (int j = 0; j + 1 < spins.num_sites(); j++) {
    e += spins.expectation(bond, {j, j + 1}).real();
  }
  return e;
}

Eigen::MatrixXcd aklt_kernel_projector(int n_spins, double tol) {
  Eigen::MatrixXcd h = aklt_dense_hamiltonian(n_spins);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("aklt_kernel_projector: diagonalization failed");
  }
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) {
    if (es.eigenvalues()(k) < tol) {
      p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
  }
  return p;
}

Eigen::MatrixXcd prepared_span_projector(int n_spins) {
  size_t dim = 1;
  for (int j = 0; j < n_spins; j++) {
    dim *= 3;
  }
  Eigen::MatrixXcd basis(static_cast<Eigen::Index>(dim), 4);
  int col = 0;
  for (int init = 0; init < 2; init++) {
    for (int outcome = 0; outcome < 2; outcome++) {
      QuditRegister state = mps_reference_state(n_spins, init, outcome);
      for (size_t i = 0; i < dim; i++) {
        basis(static_cast<Eigen::Index>(i), col) =
            state.amplitudes()[i];
      }
      col++;
    }
  }
  // Orthonormalize the four columns, then form the projector.
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
  Eigen::MatrixXcd q = qr.householderQ() *
                       Eigen::MatrixXcd::Identity(
                           static_cast<Eigen::Index>(dim), 4);
  return q * q.adjoint();
}

std::vector<std::array<double, 3>> local_spin_profile(
    const QuditRegister &spins) {
  check_spin_register(spins, "local_spin_profile");
  std::vector<std::array<double, 3>> profile(
      static_cast<size_t>(spins.num_sites()));
  const char axes[3] = {'x', 'y', 'z'};
  for (int j = 0; j < spins.num_sites(); j++) {
    for (int a = 0; a < 3; a++) {
      profile[static_cast<size_t>(j)][static_cast<size_t>(a)] =
          spins.expectation(spin1_axis(axes[a]), {j}).real();
    }
  }
  return profile;
}

Eigen::Matrix3d two_spin_correlation(const QuditRegister &spins, int i,
                                     int j) {
  check_spin_register(spins, "two_spin_correlation");
  if (i == j || i < 0 || j < 0 || i >= spins.num_sites() ||
      j >= spins.num_sites()) {
    throw std::invalid_argument("two_spin_correlation: invalid site pair");
  }
  Eigen::Matrix3d c;
  const char axes[3] = {'x', 'y', 'z'};
  for (int a = 0; a < 3; a++) {
    for (int b = 0; b < 3; b++) {
      Eigen::Matrix3cd sa = spin1_axis(axes[a]);
      Eigen::Matrix3cd sb = spin1_axis(axes[b]);
      std::vector<const Eigen::Matrix3cd *> factors(
          static_cast<size_t>(spins.num_sites()), nullptr);
      factors[static_cast<size_t>(i)] = &sa;
      factors[static_cast<size_t>(j)] = &sb;
      c(a, b) = product_operator_expectation(spins, factors).real();
    }
  }
  return c;
}

double string_order_exact(const QuditRegister &spins, char axis,
                          StringForm form) {
  check_spin_register(spins, "string_order_exact");
  check_axis(axis, "string_order_exact");
  int n = spins.num_sites();
  if (n < 2) {
    throw std::invalid_argument("string_order_exact: need at least two spins");
  }
  Eigen::Matrix3cd s = spin1_axis(axis);
  Eigen::Matrix3cd flip =
      Eigen::Matrix3cd::Identity() - 2.0 * (s * s);  // e^{i pi S^a}
  std::vector<const Eigen::Matrix3cd *> factors(static_cast<size_t>(n),
                                                nullptr);
  factors[0] = &s;
  factors[static_cast<size_t>(n - 1)] = &s;
  if (form == StringForm::sum_exponent) {
    for (int k = 1; k + 1 < n; k++) {
      factors[static_cast<size_t>(k)] = &flip;
    }
    return product_operator_expectation(spins, factors).real();
  }
  // product_exponent: e^{i pi prod_k S^a_k} = I - 2 prod_k (S^a_k)^2 on the
  // interior, because the product operator has eigenvalues in {0, +1, -1}.
  double plain = product_operator_expectation(spins, factors).real();
  Eigen::Matrix3cd s2 = s * s;
  for (int k = 1; k + 1 < n; k++) {
    factors[static_cast<size_t>(k)] = &s2;
  }
  double squared = product_operator_expectation(spins, factors).real();
  return plain - 2.0 * squared;
}

AxisReadout spin1_axis_readout(char axis) {
  check_axis(axis, "spin1_axis_readout");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(spin1_axis(axis));
  AxisReadout r;
  r.rotation = es.eigenvectors().adjoint();
  for (int d = 0; d < 3; d++) {
    // Eigenvalues are exactly {-1, 0, +1}; snap to integers so per-shot
    // values are exact.
    r.values[static_cast<size_t>(d)] = std::round(es.eigenvalues()(d));
  }
  return r;
}

MeasurementSetting string_order_setting(int n_spins, char axis,
                                        StringForm form) {
  check_axis(axis, "string_order_setting");
  if (n_spins < 2) {
    throw std::invalid_argument("string_order_setting: need >= 2 spins");
  }
  AxisReadout readout = spin1_axis_readout(axis);
  MeasurementSetting setting;
  setting.name = std::string("string_") + axis +
                 (form == StringForm::sum_exponent ? "_sum" : "_product");
  for (int j = 0; j < n_spins; j++) {
    setting.rotations.push_back({{j}, readout.rotation});
  }
  std::array<double, 3> values = readout.values;
  int n = n_spins;
  setting.value = [values, n, form](const std::vector<int> &digits) {
    double ends = values[static_cast<size_t>(digits[0])] *
                  values[static_cast<size_t>(digits[static_cast<size_t>(n - 1)])];
    if (form == StringForm::sum_exponent) {
      double interior = 1.0;
      for (int k = 1; k + 1 < n; k++) {
        double m = values[static_cast<size_t>(digits[static_cast<size_t>(k)])];
        interior *= 1.0 - 2.0 * m * m;
      }
      return ends * interior;
    }
    double prod_sq = 1.0;
    for (int k = 1; k + 1 < n; k++) {
      double m = values[static_cast<size_t>(digits[static_cast<size_t>(k)])];
      prod_sq *= m * m;
    }
    return ends * (1.0 - 2.0 * prod_sq);
  };
  return setting;
}

ShotStats string_order_sampled(const QuditRegister &spins, char axis,
                               StringForm form, long shots, Philox4x32 &rng) {
  MeasurementSetting setting =
      string_order_setting(spins.num_sites(), axis, form);
  return sample_setting(spins, setting, shots, rng);
}

EdgeAlgebra left_edge_algebra() {
  Eigen::VectorXcd u, vx, vy, vz;
  edge_support_vectors(u, vx, vy, vz);
  EdgeAlgebra alg;
  alg.x = hermitian_pair(u, vx, vz, vy);
  alg.y = hermitian_pair(u, vy, vx, vz);
  alg.z = hermitian_pair(u, vz, vy, vx);
  return alg;
}

namespace {

RabiPoint edge_triple_point(const QuditRegister &state, double theta,
                            const EdgeAlgebra &alg) {
  RabiPoint p;
  p.theta = theta;
  p.x = state.expectation(alg.x, {0, 1}).real();
  p.y = state.expectation(alg.y, {0, 1}).real();
  p.z = state.expectation(alg.z, {0, 1}).real();
  p.energy = aklt_energy(state);
  return p;
}

}  // namespace

QuditRegister edge_rotated_state(const QuditRegister &initial, double theta,
                                 double noise_p, Philox4x32 *rng) {
  check_spin_register(initial, "edge_rotated_state");
  if (initial.num_sites() < 2) {
    throw std::invalid_argument("edge_rotated_state: need >= 2 spins");
  }
  if (noise_p > 0.0 && rng == nullptr) {
    throw std::invalid_argument("edge_rotated_state: noise requires a generator");
  }
  QuditRegister state = initial;
  state.apply(hermitian_exp(left_edge_algebra().x, theta / 2.0), {0, 1});
  if (noise_p > 0.0) {
    state.depolarize_sites({0, 1}, noise_p, *rng);
  }
  return state;
}

std::vector<RabiPoint> edge_rabi_trajectory(const QuditRegister &initial,
                                            const std::vector<double> &thetas,
                                            double noise_p, Philox4x32 *rng) {
  EdgeAlgebra alg = left_edge_algebra();
  std::vector<RabiPoint> points;
  points.reserve(thetas.size());
  for (double theta : thetas) {
    QuditRegister state = edge_rotated_state(initial, theta, noise_p, rng);
    points.push_back(edge_triple_point(state, theta, alg));
  }
  return points;
}

QuditRegister bulk_rotated_state(const QuditRegister &initial, double theta) {
  check_spin_register(initial, "bulk_rotated_state");
  if (initial.num_sites() < 2) {
    throw std::invalid_argument("bulk_rotated_state: need >= 2 spins");
  }
  QuditRegister state = initial;
  Eigen::MatrixXcd u1 = hermitian_exp(spin1_x(), theta / 2.0);
  for (int j = 0; j < state.num_sites(); j++) {
    state.apply(u1, {j});
  }
  return state;
}

std::vector<RabiPoint> bulk_rabi_trajectory(const QuditRegister &initial,
                                            const std::vector<double> &thetas) {
  EdgeAlgebra alg = left_edge_algebra();
  std::vector<RabiPoint> points;
  points.reserve(thetas.size());
  for (double theta : thetas) {
    QuditRegister state = bulk_rotated_state(initial, theta);
    points.push_back(edge_triple_point(state, theta, alg));
  }
  return points;
}

MeasurementSetting edge_z_setting(int n_spins) {
  if (n_spins < 2) {
    throw std::invalid_argument("edge_z_setting: need >= 2 spins");
  }
  BondReadout readout = bond_readout(left_edge_algebra().z);
  MeasurementSetting setting;
  setting.name = "edge_z";
  setting.rotations.push_back({{0, 1}, readout.rotation});
  Eigen::VectorXd values = readout.values;
  setting.value = [values](const std::vector<int> &digits) {
    int joint = digits[0] * 3 + digits[1];
    return values(joint);
  };
  return setting;
}

std::vector<MeasurementSetting> energy_settings(int n_spins) {
  if (n_spins < 2) {
    throw std::invalid_argument("energy_settings: need >= 2 spins");
  }
  std::vector<MeasurementSetting> settings;
  // Three global single-axis settings: Heisenberg term and the diagonal part
  // of the squared term.
  for (char axis : {'x', 'y', 'z'}) {
    AxisReadout readout = spin1_axis_readout(axis);
    MeasurementSetting s;
    s.name = std::string("axis_") + axis;
    for (int j = 0; j < n_spins; j++) {
      s.rotations.push_back({{j}, readout.rotation});
    }
    std::array<double, 3> values = readout.values;
    int n = n_spins;
    s.value = [values, n](const std::vector<int> &digits) {
      double total = 0.0;
      for (int j = 0; j + 1 < n; j++) {
        double m1 = values[static_cast<size_t>(digits[static_cast<size_t>(j)])];
        double m2 =
            values[static_cast<size_t>(digits[static_cast<size_t>(j + 1)])];
        total += 0.5 * m1 * m2 + (m1 * m1 * m2 * m2) / 6.0;
      }
      return total;
    };
    settings.push_back(std::move(s));
  }
  // Six two-axis settings: symmetrized cross terms measured jointly on
  // disjoint alternating bonds.
  const std::array<std::pair<char, char>, 3> pairs = {
      std::make_pair('x', 'y'), std::make_pair('y', 'z'),
      std::make_pair('z', 'x')};
  for (const auto &[axis_a, axis_b] : pairs) {
    BondReadout readout = bond_readout(spin_cross_term(axis_a, axis_b));
    for (int parity = 0; parity < 2; parity++) {
      MeasurementSetting s;
      s.name = std::string("cross_") + axis_a + axis_b + "_" +
               std::to_string(parity);
      std::vector<int> covered;
      for (int j = parity; j + 1 < n_spins; j += 2) {
        s.rotations.push_back({{j, j + 1}, readout.rotation});
        covered.push_back(j);
      }
      Eigen::VectorXd values = readout.values;
      s.value = [values, covered](const std::vector<int> &digits) {
        double total = 0.0;
        for (int j : covered) {
          int joint = digits[static_cast<size_t>(j)] * 3 +
                      digits[static_cast<size_t>(j + 1)];
          total += values(joint) / 6.0;
        }
        return total;
      };
      settings.push_back(std::move(s));
    }
  }
  return settings;
}

EnergyEstimate nine_setting_energy_sampled(const QuditRegister &spins,
                                           long shots_per_setting,
                                           Philox4x32 &rng) {
  check_spin_register(spins, "nine_setting_energy_sampled");
  std::vector<MeasurementSetting> settings = energy_settings(spins.num_sites());
  EnergyEstimate est;
  est.energy = (spins.num_sites() - 1) / 3.0;
  double var_total = 0.0;
  for (size_t k = 0; k < settings.size(); k++) {
    Philox4x32 sub = rng.substream(0x656e6572u, k);  // per-setting stream
    ShotStats stats = sample_setting(spins, settings[k], shots_per_setting, sub);
    est.energy += stats.mean;
    var_total += stats.std_error * stats.std_error;
    est.settings.push_back({settings[k].name, stats});
  }
  est.std_error = std::sqrt(var_total);
  return est;
}

double nine_setting_energy_exact(const QuditRegister &spins) {
  check_spin_register(spins, "nine_setting_energy_exact");
  std::vector<MeasurementSetting> settings = energy_settings(spins.num_sites());
  double total = (spins.num_sites() - 1) / 3.0;
  for (const MeasurementSetting &s : settings) {
    total += setting_exact_mean(spins, s);
  }
  return total;
}

}  // namespace quditlab
