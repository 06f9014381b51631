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

#include "quditlab/spin_ops.hpp"

#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace quditlab {

namespace {
const std::complex<double> kI(0.0, 1.0);
}  // namespace

Eigen::Matrix3cd spin1_x() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(1, 2) = -kI;
  m(2, 1) = kI;
  return m;
}

Eigen::Matrix3cd spin1_y() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 2) = kI;
  m(2, 0) = -kI;
  return m;
}

Eigen::Matrix3cd spin1_z() {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Eigen::Matrix3cd spin1_axis(char axis) {
  switch (axis) {
    case 'x':
      return spin1_x();
    case 'y':
      return spin1_y();
    case 'z':
      return spin1_z();
    default:
      throw std::invalid_argument("spin1_axis: axis must be 'x', 'y' or 'z'");
  }
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd pauli_axis(char axis) {
  switch (axis) {
    case 'x':
      return pauli_x();
    case 'y':
      return pauli_y();
    case 'z':
      return pauli_z();
    default:
      throw std::invalid_argument("pauli_axis: axis must be 'x', 'y' or 'z'");
  }
}

Eigen::MatrixXcd spin_dot() {
  Eigen::MatrixXcd dot = Eigen::MatrixXcd::Zero(9, 9);
  for (char a : {'x', 'y', 'z'}) {
    Eigen::Matrix3cd s = spin1_axis(a);
    dot += Eigen::kroneckerProduct(s, s);
  }
  return dot;
}

Eigen::MatrixXcd aklt_bond_term() {
  Eigen::MatrixXcd dot = spin_dot();
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(9, 9);
  return 0.5 * dot + (dot * dot) / 6.0 + eye / 3.0;
}

Eigen::MatrixXcd spin_cross_term(char axis_a, char axis_b) {
  if (axis_a == axis_b) {
    throw std::invalid_argument("spin_cross_term: axes must differ");
  }
  Eigen::Matrix3cd sa = spin1_axis(axis_a);
  Eigen::Matrix3cd sb = spin1_axis(axis_b);
  Eigen::Matrix3cd ab = sa * sb;
  Eigen::Matrix3cd ba = sb * sa;
  Eigen::MatrixXcd t = Eigen::kroneckerProduct(ab, ab);
  t += Eigen::kroneckerProduct(ba, ba);
  return t;
}

}  // namespace quditlab
