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
//
// Benchmarks the OpenMP kernels against the serial reference implementation
// on a large mixed-radix register and checks that both produce bitwise
// identical results. Exits nonzero on any mismatch.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quditlab/gates.hpp"
#include "quditlab/kernels.hpp"
#include "quditlab/rng.hpp"
#include "quditlab/spin_ops.hpp"

namespace {

using quditlab::cdouble;

std::vector<cdouble> random_state(const std::vector<int> &dims, uint64_t seed) {
  size_t n = 1;
  for (int d : dims) {
    n *= static_cast<size_t>(d);
  }
  quditlab::Philox4x32 rng(seed);
  std::vector<cdouble> amps(n);
  for (cdouble &a : amps) {
    a = cdouble(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
  }
  double n2 = quditlab::kernels::norm_squared_serial(amps);
  double inv = 1.0 / std::sqrt(n2);
  for (cdouble &a : amps) {
    a *= inv;
  }
  return amps;
}

bool bitwise_equal(const std::vector<cdouble> &a,
                   const std::vector<cdouble> &b) {
  if (a.size() != b.size()) {
    return false;
  }
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(cdouble)) == 0;
}

template <typename Fn>
double best_seconds(int reps, Fn &&fn) {
  double best = 1e300;
  for (int r = 0; r < reps; r++) {
    double t0 = omp_get_wtime();
    fn();
    double t1 = omp_get_wtime();
    best = std::min(best, t1 - t0);
  }
  return best;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"quditlab kernel benchmark (serial vs OpenMP)"};
  int qutrits = 11;
  int reps = 5;
  int threads = 0;
  app.add_option("--qutrits", qutrits, "Number of qutrit sites")
      ->check(CLI::Range(4, 14));
  app.add_option("--reps", reps, "Repetitions per benchmark (best is kept)")
      ->check(CLI::Range(1, 100));
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }
  if (threads > 0) {
    quditlab::set_num_threads(threads);
  }

  // Ancilla qubit + `qutrits` qutrit sites, like the sequential-preparation
  // register.
  std::vector<int> dims = {2};
  for (int i = 0; i < qutrits; i++) {
    dims.push_back(3);
  }
  std::vector<cdouble> base = random_state(dims, 20260815);
  std::printf("register: ancilla qubit + %d qutrits, %zu amplitudes\n",
              qutrits, base.size());
  std::printf("omp max threads: %d\n\n", omp_get_max_threads());

  struct Case {
    std::string name;
    std::vector<int> sites;
    Eigen::MatrixXcd matrix;
  };
  Eigen::MatrixXcd sx = quditlab::spin1_x();
  Eigen::MatrixXcd bond = quditlab::aklt_bond_term();
  Eigen::MatrixXcd coupling =
      quditlab::compose_pulse_sequence(quditlab::ion_native_coupling_sequence());
  std::vector<Case> cases = {
      {"1-site 3x3 (middle)", {1 + qutrits / 2}, sx},
      {"2-site 9x9 (adjacent)", {1 + qutrits / 2, 2 + qutrits / 2}, bond},
      {"2-site 9x9 (ends)", {1, qutrits}, bond},
      {"ancilla-spin 6x6", {0, qutrits}, Eigen::MatrixXcd::Identity(6, 6)},
      {"ancilla-spin 9x9 pulse", {0, qutrits}, coupling},
  };
  // The 6x6 case needs a qubit x qutrit operator; reuse the coupling
  // unitary's structure via a Kronecker of Pauli x and spin-1 x.
  cases[3].matrix = Eigen::MatrixXcd::Zero(6, 6);
  for (int a = 0; a < 2; a++) {
    for (int b = 0; b < 2; b++) {
      cases[3].matrix.block(3 * a, 3 * b, 3, 3) =
          quditlab::pauli_x()(a, b) * Eigen::MatrixXcd(sx);
    }
  }
  // The 9x9 ancilla pulse only applies when the ancilla is a qutrit; swap in
  // a register with a qutrit ancilla for that case.
  std::vector<int> dims3 = dims;
  dims3[0] = 3;
  std::vector<cdouble> base3 = random_state(dims3, 20260816);

  std::printf("%-26s %12s %12s %9s %10s\n", "operation", "serial_ms",
              "parallel_ms", "speedup", "identical");
  bool all_ok = true;
  for (const Case &c : cases) {
    const bool qutrit_ancilla = c.matrix.rows() == 9 && c.sites[0] == 0;
    const std::vector<int> &case_dims = qutrit_ancilla ? dims3 : dims;
    const std::vector<cdouble> &case_base = qutrit_ancilla ? base3 : base;
    std::vector<cdouble> serial_out;
    std::vector<cdouble> parallel_out;
    double t_serial = best_seconds(reps, [&] {
      serial_out = case_base;
      quditlab::kernels::apply_matrix_serial(serial_out, case_dims, c.sites,
                                             c.matrix);
    });
    double t_parallel = best_seconds(reps, [&] {
      parallel_out = case_base;
      quditlab::kernels::apply_matrix_parallel(parallel_out, case_dims,
                                               c.sites, c.matrix);
    });
    bool ok = bitwise_equal(serial_out, parallel_out);
    all_ok = all_ok && ok;
    std::printf("%-26s %12.3f %12.3f %8.2fx %10s\n", c.name.c_str(),
                1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
                ok ? "yes" : "NO");
  }

  // Reductions.
  {
    std::vector<cdouble> other = random_state(dims, 20260817);
    cdouble serial_ip;
    cdouble parallel_ip;
    double t_serial = best_seconds(
        reps, [&] { serial_ip = quditlab::kernels::inner_product_serial(
                        base, other); });
    double t_parallel = best_seconds(
        reps, [&] { parallel_ip = quditlab::kernels::inner_product_parallel(
                        base, other); });
    bool ok = serial_ip.real() == parallel_ip.real() &&
              serial_ip.imag() == parallel_ip.imag();
    all_ok = all_ok && ok;
    std::printf("%-26s %12.3f %12.3f %8.2fx %10s\n", "inner product",
                1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
                ok ? "yes" : "NO");
  }
  {
    double serial_n2 = 0.0;
    double parallel_n2 = 0.0;
    double t_serial = best_seconds(
        reps, [&] { serial_n2 = quditlab::kernels::norm_squared_serial(base); });
    double t_parallel = best_seconds(reps, [&] {
      parallel_n2 = quditlab::kernels::norm_squared_parallel(base);
    });
    bool ok = serial_n2 == parallel_n2;
    all_ok = all_ok && ok;
    std::printf("%-26s %12.3f %12.3f %8.2fx %10s\n", "norm squared",
                1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
                ok ? "yes" : "NO");
  }

  std::printf("\n%s\n", all_ok ? "all parallel results bitwise identical"
                               : "MISMATCH between serial and parallel");
  return all_ok ? 0 : 1;
}
