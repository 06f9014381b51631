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

#include "quditlab/gates.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace quditlab {

namespace {

const std::complex<double> kI(0.0, 1.0);

void check_pair(int d, int a, int b, const char *what) {
  if (a < 0 || b < 0 || a >= d || b >= d || a == b) {
    throw std::invalid_argument(std::string(what) +
                                ": invalid level pair for site dimension");
  }
}

}  // namespace

Eigen::MatrixXcd r_gate(int d, int a, int b, double theta, double phi) {
  check_pair(d, a, b, "r_gate");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
  double c = std::cos(theta / 2.0);
  double s = std::sin(theta / 2.0);
  u(a, a) = c;
  u(b, b) = c;
  u(a, b) = -kI * s * std::exp(-kI * phi);
  u(b, a) = -kI * s * std::exp(kI * phi);
  return u;
}

Eigen::MatrixXcd rz_gate(int d, int a, int b, double theta) {
  check_pair(d, a, b, "rz_gate");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
  u(a, a) = std::exp(-kI * (theta / 2.0));
  u(b, b) = std::exp(kI * (theta / 2.0));
  return u;
}

Eigen::MatrixXcd ms_gate(int d1, int d2, int a1, int b1, int a2, int b2,
                         double theta, double phi) {
  check_pair(d1, a1, b1, "ms_gate");
  check_pair(d2, a2, b2, "ms_gate");
  auto x_phi = [&](int d, int a, int b) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
    x(a, b) = std::exp(-kI * phi);
    x(b, a) = std::exp(kI * phi);
    return x;
  };
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d1 * d2, d1 * d2);
  Eigen::MatrixXcd x1 = x_phi(d1, a1, b1);
  Eigen::MatrixXcd x2 = x_phi(d2, a2, b2);
  for (int r1 = 0; r1 < d1; r1++) {
    for (int c1 = 0; c1 < d1; c1++) {
      for (int r2 = 0; r2 < d2; r2++) {
        for (int c2 = 0; c2 < d2; c2++) {
          g(r1 * d2 + r2, c1 * d2 + c2) = x1(r1, c1) * x2(r2, c2);
        }
      }
    }
  }
  // G has eigenvalues in {0, +1, -1}, so
  //   exp(-i theta/2 G) = I + (cos(theta/2) - 1) G^2 - i sin(theta/2) G.
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d1 * d2, d1 * d2);
  return eye + (std::cos(theta / 2.0) - 1.0) * (g * g) -
         kI * std::sin(theta / 2.0) * g;
}

const std::vector<PulseRow> &ion_native_coupling_sequence() {
  using K = PulseRow::Kind;
  // Five single-site blocks (ancilla, spin, ancilla, spin, ancilla)
  // interleaved with two MS gates; each block is
  // Rz(0,1), Rz(1,2), R(1,2), R(0,1), R(1,2) in application order.
  static const std::vector<PulseRow> rows = {
      {K::rz, 0, 0, 1, -1.656, 0.0},
      {K::rz, 0, 1, 2, 2.551, 0.0},
      {K::r, 0, 1, 2, -3.142, -1.660},
      {K::r, 0, 0, 1, 3.142, 0.117},
      {K::r, 0, 1, 2, -0.545, 0.000},
      {K::rz, 1, 0, 1, -0.559, 0.0},
      {K::rz, 1, 1, 2, -1.637, 0.0},
      {K::r, 1, 1, 2, -3.273, 2.349},
      {K::r, 1, 0, 1, -1.201, 0.818},
      {K::r, 1, 1, 2, -2.943, 1.310},
      {K::ms, -1, 1, 2, M_PI / 2, 0.0},
      {K::rz, 0, 0, 1, -3.220, 0.0},
      {K::rz, 0, 1, 2, -1.074, 0.0},
      {K::r, 0, 1, 2, -3.721, -1.925},
      {K::r, 0, 0, 1, 6.283, 0.773},
      {K::r, 0, 1, 2, -0.644, 0.616},
      {K::rz, 1, 0, 1, 2.422, 0.0},
      {K::rz, 1, 1, 2, -0.359, 0.0},
      {K::r, 1, 1, 2, -0.188, 0.536},
      {K::r, 1, 0, 1, -2.844, 0.008},
      {K::r, 1, 1, 2, 1.524, 3.157},
      {K::ms, -1, 1, 2, M_PI / 2, 0.0},
      {K::rz, 0, 0, 1, -2.860, 0.0},
      {K::rz, 0, 1, 2, 2.986, 0.0},
      {K::r, 0, 1, 2, -4.068, 1.275},
      {K::r, 0, 0, 1, 3.142, -2.019},
      {K::r, 0, 1, 2, -3.142, 2.390},
  };
  return rows;
}

Eigen::MatrixXcd compose_pulse_sequence(const std::vector<PulseRow> &rows) {
  auto embed_first = [](const Eigen::MatrixXcd &u) {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(9, 9);
    for (int r1 = 0; r1 < 3; r1++) {
      for (int c1 = 0; c1 < 3; c1++) {
        for (int k = 0; k < 3; k++) {
          big(r1 * 3 + k, c1 * 3 + k) += u(r1, c1);
        }
      }
    }
    return big;
  };
  auto embed_second = [](const Eigen::MatrixXcd &u) {
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(9, 9);
    for (int k = 0; k < 3; k++) {
      for (int r2 = 0; r2 < 3; r2++) {
        for (int c2 = 0; c2 < 3; c2++) {
          big(k * 3 + r2, k * 3 + c2) += u(r2, c2);
        }
      }
    }
    return big;
  };
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(9, 9);
  for (const PulseRow &row : rows) {
    Eigen::MatrixXcd g;
    switch (row.kind) {
      case PulseRow::Kind::r:
        g = r_gate(3, row.level_a, row.level_b, row.theta, row.phi);
        g = row.target == 0 ? embed_first(g) : embed_second(g);
        break;
      case PulseRow::Kind::rz:
        g = rz_gate(3, row.level_a, row.level_b, row.theta);
        g = row.target == 0 ? embed_first(g) : embed_second(g);
        break;
      case PulseRow::Kind::ms:
        g = ms_gate(3, 3, row.level_a, row.level_b, row.level_a, row.level_b,
                    row.theta, row.phi);
        break;
    }
    total = g * total;
  }
  return total;
}

Eigen::MatrixXcd hermitian_exp(const Eigen::MatrixXcd &h, double angle) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_exp: eigendecomposition failed");
  }
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); k++) {
    phases(k) = std::exp(-kI * angle * es.eigenvalues()(k));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace quditlab
