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

#include "quditlab/register.hpp"

#include <cmath>

#include "doctest.h"
#include "quditlab/rng.hpp"
#include "quditlab/spin_ops.hpp"

using quditlab::cdouble;
using quditlab::Philox4x32;
using quditlab::QuditRegister;

TEST_CASE("construction and basis-state indexing") {
  QuditRegister reg({2, 3, 3});
  CHECK(reg.num_sites() == 3);
  CHECK(reg.size() == 18);
  CHECK(reg.amplitude({0, 0, 0}) == cdouble(1.0, 0.0));
  CHECK(reg.norm_squared() == doctest::Approx(1.0));

  reg.set_basis_state({1, 2, 0});
  CHECK(reg.amplitude({1, 2, 0}) == cdouble(1.0, 0.0));
  CHECK(reg.amplitude({0, 0, 0}) == cdouble(0.0, 0.0));
  // Site 0 is the most significant digit.
  CHECK(reg.flat_index({1, 2, 0}) == 1 * 9 + 2 * 3 + 0);
  CHECK(reg.digits_of(15) == std::vector<int>{1, 2, 0});
  for (size_t flat = 0; flat < reg.size(); flat++) {
    CHECK(reg.flat_index(reg.digits_of(flat)) == flat);
  }
}

TEST_CASE("apply respects the listed-site ordering") {
  QuditRegister reg({2, 3, 3});
  reg.set_basis_state({0, 1, 2});
  // Permutation that maps sub-state |a, b> -> |b', a'> style swap levels on
  // the qutrit pair (sites 2, 1): X on the first listed slot only.
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(3, 3);
  shift(1, 0) = 1.0;
  shift(2, 1) = 1.0;
  shift(0, 2) = 1.0;  // |k> -> |k+1 mod 3>
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(9, 9);
  // op = shift (x) identity acting on listed order (site2, site1): raises
  // the digit of site 2.
  for (int a = 0; a < 3; a++) {
    for (int b = 0; b < 3; b++) {
      for (int c = 0; c < 3; c++) {
        op(3 * a + c, 3 * b + c) = shift(a, b);
      }
    }
  }
  reg.apply(op, {2, 1});
  CHECK(std::abs(reg.amplitude({0, 1, 0}) - cdouble(1.0, 0.0)) < 1e-14);
}

TEST_CASE("expectation matches reduced density trace") {
  QuditRegister reg({3, 3});
  Philox4x32 rng(5);
  std::vector<cdouble> amps(9);
  for (cdouble &a : amps) {
    a = cdouble(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
  }
  reg = QuditRegister::from_amplitudes({3, 3}, amps);
  reg.normalize();
  Eigen::MatrixXcd sz = quditlab::spin1_z();
  cdouble direct = reg.expectation(sz, {1});
  Eigen::MatrixXcd rho = reg.reduced_density({1});
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  CHECK(std::abs((rho * sz).trace() - direct) < 1e-12);

  // Two-site reduced density of the full register is the projector.
  Eigen::MatrixXcd full = reg.reduced_density({0, 1});
  Eigen::VectorXcd psi(9);
  for (int i = 0; i < 9; i++) {
    psi(i) = reg.amplitudes()[static_cast<size_t>(i)];
  }
  Eigen::MatrixXcd proj = psi * psi.adjoint();
  CHECK((full - proj).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("project_site returns branch probability and renormalizes") {
  QuditRegister reg({2, 3});
  std::vector<cdouble> amps(6, cdouble(0.0, 0.0));
  amps[reg.flat_index({0, 1})] = std::sqrt(0.36);
  amps[reg.flat_index({1, 2})] = cdouble(0.0, std::sqrt(0.64));
  reg = QuditRegister::from_amplitudes({2, 3}, amps);
  double p = reg.project_site(0, 1);
  CHECK(p == doctest::Approx(0.64));
  CHECK(reg.norm_squared() == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(reg.amplitude({1, 2})) - 1.0) < 1e-12);
  CHECK_THROWS_AS(reg.project_site(0, 0), std::runtime_error);
}

TEST_CASE("measure_site collapses consistently with the marginal") {
  QuditRegister reg({2, 3});
  std::vector<cdouble> amps(6, cdouble(0.0, 0.0));
  amps[reg.flat_index({0, 0})] = std::sqrt(0.25);
  amps[reg.flat_index({1, 1})] = std::sqrt(0.75);
  QuditRegister base = QuditRegister::from_amplitudes({2, 3}, amps);

  long count1 = 0;
  const long trials = 2000;
  Philox4x32 rng(77);
  for (long t = 0; t < trials; t++) {
    QuditRegister reg2 = base;
    int outcome = reg2.measure_site(0, rng);
    std::vector<double> marg = reg2.site_marginal(0);
    CHECK(marg[static_cast<size_t>(outcome)] == doctest::Approx(1.0));
    if (outcome == 1) {
      count1++;
    }
  }
  // Mean 1500, sigma ~ 19; allow 6 sigma.
  CHECK(std::abs(count1 - 1500) < 120);
}

TEST_CASE("drop_definite_site removes a measured ancilla") {
  QuditRegister reg({2, 3, 3});
  std::vector<cdouble> amps(18, cdouble(0.0, 0.0));
  amps[reg.flat_index({1, 0, 2})] = cdouble(0.6, 0.0);
  amps[reg.flat_index({1, 2, 1})] = cdouble(0.0, 0.8);
  reg = QuditRegister::from_amplitudes({2, 3, 3}, amps);
  QuditRegister dropped = reg.drop_definite_site(0);
  CHECK(dropped.num_sites() == 2);
  CHECK(dropped.dims() == std::vector<int>{3, 3});
  CHECK(std::abs(dropped.amplitude({0, 2}) - cdouble(0.6, 0.0)) < 1e-14);
  CHECK(std::abs(dropped.amplitude({2, 1}) - cdouble(0.0, 0.8)) < 1e-14);
}

TEST_CASE("depolarize_site at p=0 is a no-op and at p=1 permutes a level") {
  QuditRegister reg({3, 3});
  reg.set_basis_state({1, 0});
  Philox4x32 rng(123);
  QuditRegister copy = reg;
  copy.depolarize_site(0, 0.0, rng);
  CHECK(copy.fidelity(reg) == doctest::Approx(1.0));

  // With p=1 the site is measured (definite digit 1) and sent to a uniformly
  // random level; the state stays a normalized basis state.
  long moved = 0;
  const long trials = 300;
  for (long t = 0; t < trials; t++) {
    QuditRegister noisy = reg;
    noisy.depolarize_site(0, 1.0, rng);
    CHECK(noisy.norm_squared() == doctest::Approx(1.0));
    std::vector<double> marg = noisy.site_marginal(0);
    int digit = -1;
    for (int d = 0; d < 3; d++) {
      if (marg[static_cast<size_t>(d)] > 0.5) {
        digit = d;
      }
    }
    REQUIRE(digit >= 0);
    if (digit != 1) {
      moved++;
    }
  }
  // Uniform target level: moves away from the original 2/3 of the time.
  CHECK(moved > trials / 3);
  CHECK(moved < trials);
}

TEST_CASE("inner and fidelity") {
  QuditRegister a({3});
  QuditRegister b({3});
  a.set_basis_state({0});
  b.set_basis_state({1});
  CHECK(std::abs(a.inner(b)) < 1e-15);
  CHECK(a.fidelity(b) == doctest::Approx(0.0));
  // (|0> + i|1>)/sqrt(2) against |1>.
  std::vector<cdouble> amps = {cdouble(1.0 / std::sqrt(2.0), 0.0),
                               cdouble(0.0, 1.0 / std::sqrt(2.0)),
                               cdouble(0.0, 0.0)};
  QuditRegister c = QuditRegister::from_amplitudes({3}, amps);
  CHECK(std::abs(c.inner(b) - cdouble(0.0, -1.0 / std::sqrt(2.0))) < 1e-12);
  CHECK(c.fidelity(b) == doctest::Approx(0.5));
}
