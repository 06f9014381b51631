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

#include "quditlab/seqgen.hpp"

#include <cmath>
#include <stdexcept>

#include "quditlab/gates.hpp"
#include "quditlab/spin_ops.hpp"

namespace quditlab {

namespace {

constexpr int kMaxSequentialSpins = 12;

void check_n_spins(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSequentialSpins) {
    throw std::invalid_argument(
        "sequential preparation supports 1..12 spins");
  }
}

void check_ancilla_label(int label, const char *what) {
  if (label != 0 && label != 1) {
    throw std::invalid_argument(std::string(what) +
                                ": ancilla label must be 0 (up) or 1 (down)");
  }
}

}  // namespace

MpsTensors aklt_mps_tensors() {
  double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  MpsTensors t;
  t.a[0] = inv_sqrt3 * pauli_x();
  t.a[1] = inv_sqrt3 * pauli_y();
  t.a[2] = inv_sqrt3 * pauli_z();
  return t;
}

Eigen::MatrixXcd coupling_isometry(const MpsTensors &tensors) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(6, 2);
  for (int alpha = 0; alpha < 2; alpha++) {
    for (int s = 0; s < 3; s++) {
      for (int alpha_out = 0; alpha_out < 2; alpha_out++) {
        v(alpha_out * 3 + s, alpha) = tensors.a[static_cast<size_t>(s)](
            alpha_out, alpha);
      }
    }
  }
  return v;
}

Eigen::MatrixXcd coupling_unitary(const MpsTensors &tensors) {
  Eigen::MatrixXcd v = coupling_isometry(tensors);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(6, 6);
  // Fixed columns: inputs |alpha, s=2>, i.e. column indices alpha*3 + 2.
  std::vector<int> fixed = {2, 5};
  std::vector<Eigen::VectorXcd> basis;
  for (int alpha = 0; alpha < 2; alpha++) {
    Eigen::VectorXcd col = v.col(alpha);
    u.col(fixed[static_cast<size_t>(alpha)]) = col;
    basis.push_back(col);
  }
  std::vector<int> free_cols;
  for (int c = 0; c < 6; c++) {
    if (c != fixed[0] && c != fixed[1]) {
      free_cols.push_back(c);
    }
  }
  size_t next_free = 0;
  for (int j = 0; j < 6 && next_free < free_cols.size(); j++) {
    Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(6);
    cand(j) = 1.0;
    for (const Eigen::VectorXcd &b : basis) {
      cand -= b.dot(cand) * b;
    }
    double n = cand.norm();
    if (n > 1e-9) {
      cand /= n;
      u.col(free_cols[next_free++]) = cand;
      basis.push_back(cand);
    }
  }
  if (next_free != free_cols.size()) {
    throw std::runtime_error("coupling_unitary: completion failed");
  }
  return u;
}

QuditRegister prepare_sequential(int n_spins, int ancilla_init, PrepMode mode,
                                 double noise_p, Philox4x32 *rng) {
  check_n_spins(n_spins);
  check_ancilla_label(ancilla_init, "prepare_sequential");
  if (noise_p > 0.0 && rng == nullptr) {
    throw std::invalid_argument(
        "prepare_sequential: noise requires a generator");
  }
  int ancilla_dim = mode == PrepMode::exact ? 2 : 3;
  std::vector<int> dims(static_cast<size_t>(n_spins) + 1, 3);
  dims[0] = ancilla_dim;
  QuditRegister reg(dims);
  std::vector<int> start(static_cast<size_t>(n_spins) + 1, 2);
  start[0] = ancilla_init;
  reg.set_basis_state(start);

  Eigen::MatrixXcd exact_u;
  if (mode == PrepMode::exact) {
    exact_u = coupling_unitary(aklt_mps_tensors());
  }
  for (int j = 1; j <= n_spins; j++) {
    if (mode == PrepMode::exact) {
      reg.apply(exact_u, {0, j});
      if (noise_p > 0.0) {
        reg.depolarize_sites({0, j}, noise_p, *rng);
      }
    } else {
      for (const PulseRow &row : ion_native_coupling_sequence()) {
        switch (row.kind) {
          case PulseRow::Kind::r:
            reg.apply(r_gate(3, row.level_a, row.level_b, row.theta, row.phi),
                      {row.target == 0 ? 0 : j});
            break;
          case PulseRow::Kind::rz:
            reg.apply(rz_gate(3, row.level_a, row.level_b, row.theta),
                      {row.target == 0 ? 0 : j});
            break;
          case PulseRow::Kind::ms:
            reg.apply(ms_gate(3, 3, row.level_a, row.level_b, row.level_a,
                              row.level_b, row.theta, row.phi),
                      {0, j});
            if (noise_p > 0.0) {
              reg.depolarize_sites({0, j}, noise_p, *rng);
            }
            break;
        }
      }
    }
  }
  return reg;
}

PreparedBranch post_select_ancilla(const QuditRegister &full, int outcome) {
  check_ancilla_label(outcome, "post_select_ancilla");
  QuditRegister copy = full;
  double prob = copy.project_site(0, outcome);
  return PreparedBranch{copy.drop_definite_site(0), prob};
}

std::vector<cdouble> contract_boundary(const MpsTensors &tensors, int n_spins,
                                       const Eigen::Vector2cd &left,
                                       const Eigen::Vector2cd &right) {
  check_n_spins(n_spins);
  size_t total = 1;
  for (int j = 0; j < n_spins; j++) {
    total *= 3;
  }
  std::vector<cdouble> amps(total);
  for (size_t idx = 0; idx < total; idx++) {
    Eigen::RowVector2cd v = left.transpose();
    size_t rem = idx;
    size_t place = total / 3;
    for (int j = 0; j < n_spins; j++) {
      int s = static_cast<int>(rem / place);
      rem %= place;
      place /= 3;
      v = v * tensors.a[static_cast<size_t>(s)];
    }
    amps[idx] = v * right;
  }
  return amps;
}

QuditRegister mps_reference_state(int n_spins, int ancilla_init, int outcome) {
  check_ancilla_label(ancilla_init, "mps_reference_state");
  check_ancilla_label(outcome, "mps_reference_state");
  Eigen::Vector2cd left = Eigen::Vector2cd::Zero();
  Eigen::Vector2cd right = Eigen::Vector2cd::Zero();
  left(1 - ancilla_init) = 1.0;
  right(1 - outcome) = 1.0;
  std::vector<cdouble> amps =
      contract_boundary(aklt_mps_tensors(), n_spins, left, right);
  QuditRegister reg = QuditRegister::from_amplitudes(
      std::vector<int>(static_cast<size_t>(n_spins), 3), std::move(amps));
  reg.normalize();
  return reg;
}

double branch_probability(int n_spins, int ancilla_init, int outcome) {
  check_ancilla_label(ancilla_init, "branch_probability");
  check_ancilla_label(outcome, "branch_probability");
  Eigen::Vector2cd left = Eigen::Vector2cd::Zero();
  Eigen::Vector2cd right = Eigen::Vector2cd::Zero();
  left(1 - ancilla_init) = 1.0;
  right(1 - outcome) = 1.0;
  std::vector<cdouble> amps =
      contract_boundary(aklt_mps_tensors(), n_spins, left, right);
  double p = 0.0;
  for (const cdouble &a : amps) {
    p += std::norm(a);
  }
  return p;
}

}  // namespace quditlab
