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

#ifndef QUDITLAB_KERNELS_HPP
#define QUDITLAB_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace quditlab {

using cdouble = std::complex<double>;

/// Execution backend for the state-vector kernels.
///
/// `serial` is the reference implementation; `parallel` uses OpenMP.
/// `automatic` picks the parallel path only for registers large enough to
/// amortize thread startup. All reductions use fixed-size blocked partial
/// sums combined in index order, so results are bitwise identical across
/// backends and thread counts.
enum class ExecMode { serial, parallel, automatic };

void set_exec_mode(ExecMode mode);
ExecMode exec_mode();

/// Number of OpenMP threads the parallel backend will use (clamped >= 1).
void set_num_threads(int threads);

namespace kernels {

/// Registers below this amplitude count always take the serial path in
/// `automatic` mode.
constexpr size_t kAutoParallelThreshold = 1u << 12;

/// Block length for deterministic reductions.
constexpr size_t kReductionBlock = 4096;

/// Applies a unitary (or general matrix) on a subset of sites of a
/// mixed-radix register. `dims[s]` is the local dimension of site `s`;
/// site 0 is the most significant digit of the flattened index. `sites`
/// must be distinct; the matrix acts on the tensor slot ordered as given
/// (first listed site = most significant sub-index) and must be square with
/// dimension prod(dims[sites]).
void apply_matrix_serial(std::vector<cdouble> &amps,
                         const std::vector<int> &dims,
                         const std::vector<int> &sites,
                         const Eigen::MatrixXcd &matrix);
void apply_matrix_parallel(std::vector<cdouble> &amps,
                           const std::vector<int> &dims,
                           const std::vector<int> &sites,
                           const Eigen::MatrixXcd &matrix);
void apply_matrix(std::vector<cdouble> &amps, const std::vector<int> &dims,
                  const std::vector<int> &sites,
                  const Eigen::MatrixXcd &matrix);

/// <a|b> with deterministic blocked reduction.
cdouble inner_product_serial(const std::vector<cdouble> &a,
                             const std::vector<cdouble> &b);
cdouble inner_product_parallel(const std::vector<cdouble> &a,
                               const std::vector<cdouble> &b);
cdouble inner_product(const std::vector<cdouble> &a,
                      const std::vector<cdouble> &b);

/// sum |a_i|^2 with deterministic blocked reduction.
double norm_squared_serial(const std::vector<cdouble> &a);
double norm_squared_parallel(const std::vector<cdouble> &a);
double norm_squared(const std::vector<cdouble> &a);

/// Marginal probability distribution of one site's digit.
std::vector<double> site_marginal(const std::vector<cdouble> &amps,
                                  const std::vector<int> &dims, int site);

}  // namespace kernels

}  // namespace quditlab

#endif
