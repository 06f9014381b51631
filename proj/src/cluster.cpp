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

#include "quditlab/cluster.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "quditlab/gates.hpp"
#include "quditlab/spin_ops.hpp"

namespace quditlab {

namespace {

const std::complex<double> kI(0.0, 1.0);

void check_qubit_register(const QuditRegister &qubits, const char *what) {
  for (int s = 0; s < qubits.num_sites(); s++) {
    if (qubits.dim(s) != 2) {
      throw std::invalid_argument(std::string(what) +
                                  ": expected an all-qubit register");
    }
  }
}

Eigen::Matrix2cd pauli_of(char op) {
  switch (op) {
    case 'I':
      return Eigen::Matrix2cd::Identity();
    case 'X':
      return pauli_x();
    case 'Y':
      return pauli_y();
    case 'Z':
      return pauli_z();
    default:
      throw std::invalid_argument("PauliString: ops must be I, X, Y or Z");
  }
}

PauliString identity_string(int n) {
  return PauliString{std::string(static_cast<size_t>(n), 'I'), 1.0};
}

PauliString make_string(int n, std::initializer_list<std::pair<int, char>> taps,
                        double sign = 1.0) {
  PauliString p = identity_string(n);
  p.sign = sign;
  for (const auto &[site, op] : taps) {
    p.ops[static_cast<size_t>(site)] = op;
  }
  return p;
}

}  // namespace

PauliString pauli_product(const PauliString &a, const PauliString &b) {
  if (a.ops.size() != b.ops.size()) {
    throw std::invalid_argument("pauli_product: length mismatch");
  }
  // Single-site multiplication table with phases i^k.
  auto mul = [](char p, char q, cdouble &phase) -> char {
    if (p == 'I') return q;
    if (q == 'I') return p;
    if (p == q) return 'I';
    // X Y = iZ and cyclic; reversed order flips the sign.
    auto cyclic = [](char a_, char b_) {
      return (a_ == 'X' && b_ == 'Y') || (a_ == 'Y' && b_ == 'Z') ||
             (a_ == 'Z' && b_ == 'X');
    };
    char r = 'I';
    for (char c : {'X', 'Y', 'Z'}) {
      if (c != p && c != q) {
        r = c;
      }
    }
    phase *= cyclic(p, q) ? cdouble(0.0, 1.0) : cdouble(0.0, -1.0);
    return r;
  };
  PauliString result;
  result.ops.resize(a.ops.size());
  cdouble phase = a.sign * b.sign;
  for (size_t j = 0; j < a.ops.size(); j++) {
    result.ops[j] = mul(a.ops[j], b.ops[j], phase);
  }
  if (std::abs(phase.imag()) > 1e-12) {
    throw std::invalid_argument(
        "pauli_product: product is not Hermitian (imaginary phase)");
  }
  result.sign = phase.real();
  return result;
}

void apply_pauli(QuditRegister &qubits, const PauliString &p) {
  check_qubit_register(qubits, "apply_pauli");
  if (static_cast<int>(p.ops.size()) != qubits.num_sites()) {
    throw std::invalid_argument("apply_pauli: length mismatch");
  }
  for (int j = 0; j < qubits.num_sites(); j++) {
    char op = p.ops[static_cast<size_t>(j)];
    if (op != 'I') {
      qubits.apply(pauli_of(op), {j});
    }
  }
  if (p.sign != 1.0) {
    qubits.scale(p.sign);
  }
}

double pauli_expectation(const QuditRegister &qubits, const PauliString &p) {
  QuditRegister tmp = qubits;
  apply_pauli(tmp, p);
  return qubits.inner(tmp).real();
}

MeasurementSetting pauli_setting(const PauliString &p) {
  MeasurementSetting setting;
  setting.name = "pauli_" + p.ops;
  std::vector<int> support;
  for (size_t j = 0; j < p.ops.size(); j++) {
    char op = p.ops[j];
    if (op == 'I') {
      continue;
    }
    support.push_back(static_cast<int>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(pauli_of(op));
    // Ascending eigenvalues {-1, +1}: reorder so digit 0 announces +1.
    Eigen::Matrix2cd vecs;
    vecs.col(0) = es.eigenvectors().col(1);
    vecs.col(1) = es.eigenvectors().col(0);
    setting.rotations.push_back(
        {{static_cast<int>(j)}, vecs.adjoint()});
  }
  double sign = p.sign;
  setting.value = [support, sign](const std::vector<int> &digits) {
    double v = sign;
    for (int j : support) {
      v *= 1.0 - 2.0 * digits[static_cast<size_t>(j)];
    }
    return v;
  };
  return setting;
}

QuditRegister cluster_state(int n_qubits, ClusterMethod method, double noise_p,
                            Philox4x32 *rng) {
  if (n_qubits < 2 || n_qubits > 16) {
    throw std::invalid_argument("cluster_state: supported for 2..16 qubits");
  }
  if (noise_p > 0.0 && rng == nullptr) {
    throw std::invalid_argument("cluster_state: noise requires a generator");
  }
  QuditRegister reg(std::vector<int>(static_cast<size_t>(n_qubits), 2));
  if (method == ClusterMethod::cz_ladder) {
    Eigen::Matrix2cd had;
    had << 1, 1, 1, -1;
    had /= std::sqrt(2.0);
    for (int j = 0; j < n_qubits; j++) {
      reg.apply(had, {j});
    }
    Eigen::MatrixXcd cz = Eigen::MatrixXcd::Identity(4, 4);
    cz(3, 3) = -1.0;
    for (int j = 0; j + 1 < n_qubits; j++) {
      reg.apply(cz, {j, j + 1});
      if (noise_p > 0.0) {
        reg.depolarize_sites({j, j + 1}, noise_p, *rng);
      }
    }
    return reg;
  }
  // Ion-native ladder: all-|0> register, MS on every bond, edge X pulses,
  // global Y pulse.
  for (int j = 0; j + 1 < n_qubits; j++) {
    reg.apply(ms_gate(2, 2, 0, 1, 0, 1, -M_PI / 2, 0.0), {j, j + 1});
    if (noise_p > 0.0) {
      reg.depolarize_sites({j, j + 1}, noise_p, *rng);
    }
  }
  Eigen::MatrixXcd rx = r_gate(2, 0, 1, -M_PI / 2, 0.0);
  reg.apply(rx, {0});
  reg.apply(rx, {n_qubits - 1});
  Eigen::MatrixXcd ry = r_gate(2, 0, 1, -M_PI / 2, M_PI / 2);
  for (int j = 0; j < n_qubits; j++) {
    reg.apply(ry, {j});
  }
  return reg;
}

std::vector<PauliString> cluster_stabilizer_generators(int n_qubits) {
  if (n_qubits < 2) {
    throw std::invalid_argument("cluster_stabilizer_generators: need >= 2");
  }
  std::vector<PauliString> gens;
  gens.push_back(make_string(n_qubits, {{0, 'X'}, {1, 'Z'}}));
  for (int j = 1; j + 1 < n_qubits; j++) {
    gens.push_back(
        make_string(n_qubits, {{j - 1, 'Z'}, {j, 'X'}, {j + 1, 'Z'}}));
  }
  gens.push_back(
      make_string(n_qubits, {{n_qubits - 2, 'Z'}, {n_qubits - 1, 'X'}}));
  return gens;
}

double stabilizer_group_mean_exhaustive(const QuditRegister &qubits) {
  check_qubit_register(qubits, "stabilizer_group_mean_exhaustive");
  int n = qubits.num_sites();
  if (n > 10) {
    throw std::invalid_argument(
        "stabilizer_group_mean_exhaustive: use the sampled version above 10 "
        "qubits");
  }
  std::vector<PauliString> gens = cluster_stabilizer_generators(n);
  double total = 0.0;
  size_t group = size_t{1} << n;
  for (size_t mask = 0; mask < group; mask++) {
    PauliString g = identity_string(n);
    for (int k = 0; k < n; k++) {
      if ((mask >> k) & 1u) {
        g = pauli_product(g, gens[static_cast<size_t>(k)]);
      }
    }
    total += pauli_expectation(qubits, g);
  }
  return total / static_cast<double>(group);
}

ShotStats stabilizer_group_mean_sampled(const QuditRegister &qubits,
                                        long n_samples, Philox4x32 &rng) {
  check_qubit_register(qubits, "stabilizer_group_mean_sampled");
  if (n_samples <= 0) {
    throw std::invalid_argument("stabilizer_group_mean_sampled: need > 0");
  }
  int n = qubits.num_sites();
  std::vector<PauliString> gens = cluster_stabilizer_generators(n);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long s = 0; s < n_samples; s++) {
    uint64_t mask = rng.next_below(uint64_t{1} << n);
    PauliString g = identity_string(n);
    for (int k = 0; k < n; k++) {
      if ((mask >> k) & 1u) {
        g = pauli_product(g, gens[static_cast<size_t>(k)]);
      }
    }
    double v = pauli_expectation(qubits, g);
    sum += v;
    sum_sq += v * v;
  }
  ShotStats stats;
  stats.shots = n_samples;
  stats.mean = sum / static_cast<double>(n_samples);
  stats.variance = std::max(
      0.0, sum_sq / static_cast<double>(n_samples) - stats.mean * stats.mean);
  stats.std_error =
      std::sqrt(stats.variance / static_cast<double>(n_samples));
  return stats;
}

Eigen::MatrixXcd cluster_dense_hamiltonian(int n_qubits) {
  if (n_qubits < 3 || n_qubits > 10) {
    throw std::invalid_argument(
        "cluster_dense_hamiltonian: supported for 3..10 qubits");
  }
  size_t dim = size_t{1} << n_qubits;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (int j = 1; j + 1 < n_qubits; j++) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n_qubits; k++) {
      Eigen::Matrix2cd factor = Eigen::Matrix2cd::Identity();
      if (k == j - 1 || k == j + 1) {
        factor = pauli_z();
      } else if (k == j) {
        factor = pauli_x();
      }
      term = Eigen::kroneckerProduct(term, factor).eval();
    }
    h -= term;
  }
  return h;
}

double cluster_energy(const QuditRegister &qubits) {
  check_qubit_register(qubits, "cluster_energy");
  int n = qubits.num_sites();
  double e = 0.0;
  for (int j = 1; j + 1 < n; j++) {
    e -= pauli_expectation(
        qubits, make_string(n, {{j - 1, 'Z'}, {j, 'X'}, {j + 1, 'Z'}}));
  }
  return e;
}

Eigen::MatrixXcd cluster_ground_projector(int n_qubits, double tol) {
  Eigen::MatrixXcd h = cluster_dense_hamiltonian(n_qubits);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("cluster_ground_projector: diagonalization failed");
  }
  double ground = es.eigenvalues()(0);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) {
    if (es.eigenvalues()(k) < ground + tol) {
      p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
    }
  }
  return p;
}

Eigen::MatrixXcd cluster_prepared_span_projector(int n_qubits) {
  size_t dim = size_t{1} << n_qubits;
  Eigen::MatrixXcd basis(static_cast<Eigen::Index>(dim), 4);
  QuditRegister ideal = cluster_state(n_qubits, ClusterMethod::cz_ladder);
  int col = 0;
  for (int za = 0; za < 2; za++) {
    for (int zb = 0; zb < 2; zb++) {
      QuditRegister state = ideal;
      PauliString dress = identity_string(n_qubits);
      if (za) {
        dress.ops[0] = 'Z';
      }
      if (zb) {
        dress.ops[static_cast<size_t>(n_qubits - 1)] = 'Z';
      }
      apply_pauli(state, dress);
      for (size_t i = 0; i < dim; i++) {
        basis(static_cast<Eigen::Index>(i), col) = state.amplitudes()[i];
      }
      col++;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(basis);
  Eigen::MatrixXcd q =
      qr.householderQ() *
      Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), 4);
  return q * q.adjoint();
}

std::vector<ClusterTableRow> bulk_edge_correspondence(
    const QuditRegister &qubits) {
  check_qubit_register(qubits, "bulk_edge_correspondence");
  int n = qubits.num_sites();
  if (n != 6) {
    throw std::invalid_argument("bulk_edge_correspondence: defined for 6 qubits");
  }
  struct RowSpec {
    std::string label;
    PauliString op;
  };
  std::vector<RowSpec> specs = {
      {"identity", identity_string(n)},
      {"x_even", make_string(n, {{0, 'X'}, {2, 'X'}, {4, 'X'}})},
      {"x_even_equiv", make_string(n, {{0, 'X'}, {1, 'Z'}, {5, 'Z'}})},
      {"x_odd", make_string(n, {{1, 'X'}, {3, 'X'}, {5, 'X'}})},
      {"x_odd_equiv", make_string(n, {{0, 'Z'}, {4, 'Z'}, {5, 'X'}})},
  };
  std::vector<PauliString> gens = cluster_stabilizer_generators(n);
  std::vector<ClusterTableRow> rows;
  for (const RowSpec &spec : specs) {
    QuditRegister state = qubits;
    apply_pauli(state, spec.op);
    ClusterTableRow row;
    row.label = spec.label;
    row.applied = spec.op;
    double bulk = 0.0;
    for (int j = 1; j <= 4; j++) {
      bulk += pauli_expectation(state, gens[static_cast<size_t>(j)]);
    }
    row.bulk_mean = bulk / 4.0;
    row.left_edge = pauli_expectation(state, gens[0]);
    row.right_edge = pauli_expectation(state, gens[5]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::array<PauliString, 3> edge_pair_operators(int n_qubits) {
  if (n_qubits != 6) {
    throw std::invalid_argument("edge_pair_operators: defined for 6 qubits");
  }
  return {
      make_string(6, {{1, 'X'}, {3, 'X'}, {4, 'Z'}}),
      make_string(6, {{0, 'X'}, {1, 'X'}, {2, 'X'}, {3, 'X'}, {4, 'Y'}, {5, 'Z'}},
                  -1.0),
      make_string(6, {{0, 'X'}, {2, 'X'}, {4, 'X'}, {5, 'Z'}}),
  };
}

std::vector<RabiPoint> cluster_rabi_trajectory(const QuditRegister &initial,
                                               const std::vector<double> &thetas,
                                               double noise_p,
                                               Philox4x32 *rng) {
  check_qubit_register(initial, "cluster_rabi_trajectory");
  if (noise_p > 0.0 && rng == nullptr) {
    throw std::invalid_argument(
        "cluster_rabi_trajectory: noise requires a generator");
  }
  std::array<PauliString, 3> p = edge_pair_operators(initial.num_sites());
  std::vector<RabiPoint> points;
  points.reserve(thetas.size());
  for (double theta : thetas) {
    // exp(-i theta/2 P_1) = cos(theta/2) I - i sin(theta/2) P_1.
    QuditRegister rotated = initial;
    apply_pauli(rotated, p[0]);
    const std::vector<cdouble> &base = initial.amplitudes();
    std::vector<cdouble> &amps = rotated.mutable_amplitudes();
    cdouble c = std::cos(theta / 2.0);
    cdouble s = -kI * std::sin(theta / 2.0);
    for (size_t i = 0; i < amps.size(); i++) {
      amps[i] = c * base[i] + s * amps[i];
    }
    if (noise_p > 0.0) {
      // The drive supports three qubits; treat it as one noisy multi-qubit
      // operation on its support.
      std::vector<int> support;
      for (size_t j = 0; j < p[0].ops.size(); j++) {
        if (p[0].ops[j] != 'I') {
          support.push_back(static_cast<int>(j));
        }
      }
      rotated.depolarize_sites(support, noise_p, *rng);
    }
    RabiPoint pt;
    pt.theta = theta;
    pt.x = pauli_expectation(rotated, p[0]);
    pt.y = pauli_expectation(rotated, p[1]);
    pt.z = pauli_expectation(rotated, p[2]);
    pt.energy = cluster_energy(rotated);
    points.push_back(pt);
  }
  return points;
}

namespace {

BellBranch finish_branch(QuditRegister &state, std::vector<int> outcomes,
                         double probability) {
  int n = state.num_sites();
  BellBranch branch;
  branch.outcomes = std::move(outcomes);
  branch.probability = probability;
  // a = s_2 s_4, b = s_1 s_3 (0-based measured sites 1..4).
  branch.a = branch.outcomes[1] * branch.outcomes[3];
  branch.b = branch.outcomes[0] * branch.outcomes[2];
  branch.x0zn = pauli_expectation(
      state, make_string(n, {{0, 'X'}, {n - 1, 'Z'}}));
  branch.z0xn = pauli_expectation(
      state, make_string(n, {{0, 'Z'}, {n - 1, 'X'}}));
  branch.y0yn = pauli_expectation(
      state, make_string(n, {{0, 'Y'}, {n - 1, 'Y'}}));
  branch.fidelity = (1.0 + branch.a * branch.x0zn + branch.b * branch.z0xn +
                     branch.a * branch.b * branch.y0yn) /
                    4.0;
  return branch;
}

const Eigen::Matrix2cd &hadamard() {
  static const Eigen::Matrix2cd h = [] {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return Eigen::Matrix2cd(m / std::sqrt(2.0));
  }();
  return h;
}

}  // namespace

std::vector<BellBranch> bell_projection_branches(const QuditRegister &qubits) {
  check_qubit_register(qubits, "bell_projection_branches");
  int n = qubits.num_sites();
  if (n != 6) {
    throw std::invalid_argument("bell_projection_branches: defined for 6 qubits");
  }
  // Rotate the interior to the X eigenbasis once, then enumerate outcomes.
  QuditRegister rotated = qubits;
  for (int j = 1; j + 1 < n; j++) {
    rotated.apply(hadamard(), {j});
  }
  std::vector<BellBranch> branches;
  int interior = n - 2;
  for (int mask = 0; mask < (1 << interior); mask++) {
    QuditRegister state = rotated;
    std::vector<int> outcomes(static_cast<size_t>(interior));
    double probability = 1.0;
    for (int k = 0; k < interior; k++) {
      int digit = (mask >> k) & 1;
      outcomes[static_cast<size_t>(k)] = 1 - 2 * digit;
      probability *= state.project_site(k + 1, digit);
    }
    branches.push_back(finish_branch(state, std::move(outcomes), probability));
  }
  return branches;
}

BellBranch bell_projection_sample(const QuditRegister &qubits,
                                  Philox4x32 &rng) {
  check_qubit_register(qubits, "bell_projection_sample");
  int n = qubits.num_sites();
  if (n != 6) {
    throw std::invalid_argument("bell_projection_sample: defined for 6 qubits");
  }
  QuditRegister state = qubits;
  std::vector<int> outcomes;
  double probability = 1.0;
  for (int j = 1; j + 1 < n; j++) {
    state.apply(hadamard(), {j});
    std::vector<double> marginal = state.site_marginal(j);
    int digit = state.measure_site(j, rng);
    outcomes.push_back(1 - 2 * digit);
    probability *= marginal[static_cast<size_t>(digit)];
  }
  return finish_branch(state, std::move(outcomes), probability);
}

}  // namespace quditlab
