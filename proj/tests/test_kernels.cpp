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

#include "quditlab/kernels.hpp"

#include <omp.h>

#include <cstring>
#include <vector>

#include "doctest.h"
#include "quditlab/rng.hpp"

using quditlab::cdouble;
namespace kernels = quditlab::kernels;

namespace {

std::vector<cdouble> random_amps(const std::vector<int> &dims, uint64_t seed) {
  size_t n = 1;
  for (int d : dims) {
    n *= static_cast<size_t>(d);
  }
  quditlab::Philox4x32 rng(seed);
  std::vector<cdouble> amps(n);
  for (cdouble &a : amps) {
    a = cdouble(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
  }
  return amps;
}

// Brute-force reference for apply_matrix, written directly from the indexing
// convention: site 0 is the most significant digit; the first listed site is
// the most significant sub-index of the matrix.
std::vector<cdouble> reference_apply(const std::vector<cdouble> &in,
                                     const std::vector<int> &dims,
                                     const std::vector<int> &sites,
                                     const Eigen::MatrixXcd &m) {
  size_t n = in.size();
  std::vector<size_t> strides(dims.size(), 1);
  for (int s = static_cast<int>(dims.size()) - 2; s >= 0; s--) {
    strides[static_cast<size_t>(s)] =
        strides[static_cast<size_t>(s) + 1] *
        static_cast<size_t>(dims[static_cast<size_t>(s) + 1]);
  }
  auto sub_index = [&](size_t flat) {
    size_t sub = 0;
    for (int s : sites) {
      size_t digit = (flat / strides[static_cast<size_t>(s)]) %
                     static_cast<size_t>(dims[static_cast<size_t>(s)]);
      sub = sub * static_cast<size_t>(dims[static_cast<size_t>(s)]) + digit;
    }
    return sub;
  };
  auto with_sub = [&](size_t flat, size_t sub) {
    // Replace the listed sites' digits with those encoded in `sub`.
    std::vector<size_t> digits(sites.size());
    for (int s = static_cast<int>(sites.size()) - 1; s >= 0; s--) {
      size_t d =
          static_cast<size_t>(dims[static_cast<size_t>(sites[static_cast<size_t>(s)])]);
      digits[static_cast<size_t>(s)] = sub % d;
      sub /= d;
    }
    size_t out = flat;
    for (size_t k = 0; k < sites.size(); k++) {
      size_t stride = strides[static_cast<size_t>(sites[k])];
      size_t d = static_cast<size_t>(dims[static_cast<size_t>(sites[k])]);
      size_t old_digit = (out / stride) % d;
      out += (digits[k] - old_digit) * stride;
    }
    return out;
  };
  std::vector<cdouble> out(n, cdouble(0.0, 0.0));
  for (size_t i = 0; i < n; i++) {
    size_t col = sub_index(i);
    for (Eigen::Index row = 0; row < m.rows(); row++) {
      size_t t = with_sub(i, static_cast<size_t>(row));
      out[t] += m(row, static_cast<Eigen::Index>(col)) * in[i];
    }
  }
  return out;
}

Eigen::MatrixXcd random_matrix(int n, uint64_t seed) {
  quditlab::Philox4x32 rng(seed);
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; r++) {
    for (int c = 0; c < n; c++) {
      m(r, c) = cdouble(2.0 * rng.next_double() - 1.0,
                        2.0 * rng.next_double() - 1.0);
    }
  }
  return m;
}

bool bitwise_equal(const std::vector<cdouble> &a,
                   const std::vector<cdouble> &b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cdouble)) == 0;
}

}  // namespace

TEST_CASE("apply_matrix matches the brute-force reference") {
  std::vector<int> dims = {2, 3, 3, 2, 3};
  std::vector<cdouble> in = random_amps(dims, 11);
  struct Case {
    std::vector<int> sites;
    int dim;
  };
  std::vector<Case> cases = {
      {{0}, 2},    {{2}, 3},    {{4}, 3},       {{1, 2}, 9},
      {{2, 1}, 9}, {{0, 3}, 4}, {{4, 0}, 6},    {{3, 1, 4}, 18},
  };
  for (size_t k = 0; k < cases.size(); k++) {
    Eigen::MatrixXcd m = random_matrix(cases[k].dim, 100 + k);
    std::vector<cdouble> expected = reference_apply(in, dims, cases[k].sites, m);
    std::vector<cdouble> serial = in;
    kernels::apply_matrix_serial(serial, dims, cases[k].sites, m);
    std::vector<cdouble> parallel = in;
    kernels::apply_matrix_parallel(parallel, dims, cases[k].sites, m);
    REQUIRE(serial.size() == expected.size());
    for (size_t i = 0; i < expected.size(); i++) {
      CAPTURE(k);
      CAPTURE(i);
      CHECK(std::abs(serial[i] - expected[i]) < 1e-12);
    }
    CHECK(bitwise_equal(serial, parallel));
  }
}

TEST_CASE("serial and parallel agree bitwise on a large register") {
  // 2 * 3^8 = 13122 amplitudes, above the automatic-parallel threshold.
  std::vector<int> dims = {2, 3, 3, 3, 3, 3, 3, 3, 3};
  std::vector<cdouble> in = random_amps(dims, 7);
  Eigen::MatrixXcd m2 = random_matrix(9, 21);
  Eigen::MatrixXcd m1 = random_matrix(3, 22);
  Eigen::MatrixXcd m6 = random_matrix(6, 23);

  std::vector<cdouble> serial = in;
  kernels::apply_matrix_serial(serial, dims, {3, 4}, m2);
  kernels::apply_matrix_serial(serial, dims, {8}, m1);
  kernels::apply_matrix_serial(serial, dims, {0, 5}, m6);

  std::vector<cdouble> parallel = in;
  kernels::apply_matrix_parallel(parallel, dims, {3, 4}, m2);
  kernels::apply_matrix_parallel(parallel, dims, {8}, m1);
  kernels::apply_matrix_parallel(parallel, dims, {0, 5}, m6);

  CHECK(bitwise_equal(serial, parallel));

  std::vector<cdouble> automatic = in;
  kernels::apply_matrix(automatic, dims, {3, 4}, m2);
  kernels::apply_matrix(automatic, dims, {8}, m1);
  kernels::apply_matrix(automatic, dims, {0, 5}, m6);
  CHECK(bitwise_equal(serial, automatic));
}

TEST_CASE("reductions are bitwise deterministic across modes") {
  std::vector<int> dims = {3, 3, 3, 3, 3, 3, 3, 3, 3};  // 19683
  std::vector<cdouble> a = random_amps(dims, 31);
  std::vector<cdouble> b = random_amps(dims, 32);

  cdouble ip_serial = kernels::inner_product_serial(a, b);
  cdouble ip_parallel = kernels::inner_product_parallel(a, b);
  CHECK(ip_serial.real() == ip_parallel.real());
  CHECK(ip_serial.imag() == ip_parallel.imag());
  cdouble ip_auto = kernels::inner_product(a, b);
  CHECK(ip_serial.real() == ip_auto.real());
  CHECK(ip_serial.imag() == ip_auto.imag());

  double n2_serial = kernels::norm_squared_serial(a);
  double n2_parallel = kernels::norm_squared_parallel(a);
  CHECK(n2_serial == n2_parallel);

  // Repeated evaluation with a different thread count still matches.
  int original_threads = omp_get_max_threads();
  quditlab::set_num_threads(3);
  CHECK(kernels::inner_product_parallel(a, b).real() == ip_serial.real());
  CHECK(kernels::norm_squared_parallel(a) == n2_serial);
  quditlab::set_num_threads(original_threads);
}

TEST_CASE("inner product is conjugate-linear in its first argument") {
  std::vector<int> dims = {3, 3};
  std::vector<cdouble> a = random_amps(dims, 41);
  std::vector<cdouble> b = random_amps(dims, 42);
  cdouble ab = kernels::inner_product(a, b);
  cdouble ba = kernels::inner_product(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
  CHECK(std::abs(kernels::inner_product(a, a).real() -
                 kernels::norm_squared(a)) < 1e-12);
  CHECK(std::abs(kernels::inner_product(a, a).imag()) < 1e-15);
}

TEST_CASE("site_marginal sums amplitude magnitudes by digit") {
  std::vector<int> dims = {2, 3};
  // |psi> = a|0,1> + b|1,2>
  std::vector<cdouble> amps(6, cdouble(0.0, 0.0));
  amps[1] = cdouble(0.6, 0.0);   // digits (0, 1)
  amps[5] = cdouble(0.0, 0.8);   // digits (1, 2)
  std::vector<double> m0 = kernels::site_marginal(amps, dims, 0);
  std::vector<double> m1 = kernels::site_marginal(amps, dims, 1);
  CHECK(m0[0] == doctest::Approx(0.36));
  CHECK(m0[1] == doctest::Approx(0.64));
  CHECK(m1[0] == doctest::Approx(0.0));
  CHECK(m1[1] == doctest::Approx(0.36));
  CHECK(m1[2] == doctest::Approx(0.64));
}

TEST_CASE("unitary application preserves the norm") {
  std::vector<int> dims = {2, 3, 3, 3};
  std::vector<cdouble> amps = random_amps(dims, 55);
  double n2 = kernels::norm_squared(amps);
  // Householder-orthonormalized random matrix as a stand-in unitary.
  Eigen::MatrixXcd m = random_matrix(9, 56);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  kernels::apply_matrix(amps, dims, {1, 3}, q);
  CHECK(kernels::norm_squared(amps) == doctest::Approx(n2).epsilon(1e-12));
}
