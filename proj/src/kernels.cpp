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

#include <algorithm>
#include <stdexcept>

namespace quditlab {

namespace {

ExecMode g_exec_mode = ExecMode::automatic;
int g_num_threads = 0;  // 0 = OpenMP default

bool use_parallel(size_t problem_size) {
  switch (g_exec_mode) {
    case ExecMode::serial:
      return false;
    case ExecMode::parallel:
      return true;
    case ExecMode::automatic:
      return problem_size >= kernels::kAutoParallelThreshold;
  }
  return false;
}

struct SubspaceIndexer {
  // Decomposes the flat index into (outer digits) x (digits on `sites`).
  // `offsets[sub]` enumerates the flat offsets of the sub-block for outer
  // index 0; outer indices are enumerated through `outer_dims`/`outer_strides`.
  std::vector<size_t> outer_strides;
  std::vector<int> outer_dims;
  std::vector<size_t> sub_offsets;
  size_t n_outer = 1;
  size_t sub_dim = 1;

  SubspaceIndexer(const std::vector<int> &dims, const std::vector<int> &sites) {
    size_t n = dims.size();
    std::vector<size_t> strides(n, 1);
    for (size_t i = n; i-- > 1;) {
      strides[i - 1] = strides[i] * static_cast<size_t>(dims[i]);
    }
    std::vector<bool> on_site(n, false);
    for (int s : sites) {
      if (s < 0 || static_cast<size_t>(s) >= n) {
        throw std::invalid_argument("apply_matrix: site index out of range");
      }
      if (on_site[s]) {
        throw std::invalid_argument("apply_matrix: duplicate site index");
      }
      on_site[s] = true;
      sub_dim *= static_cast<size_t>(dims[s]);
    }
    for (size_t i = 0; i < n; i++) {
      if (!on_site[i]) {
        outer_dims.push_back(dims[i]);
        outer_strides.push_back(strides[i]);
        n_outer *= static_cast<size_t>(dims[i]);
      }
    }
    // Sub-block offsets in matrix ordering: first listed site is the most
    // significant sub-index.
    sub_offsets.assign(sub_dim, 0);
    size_t repeat = 1;
    for (size_t k = sites.size(); k-- > 0;) {
      int s = sites[k];
      size_t d = static_cast<size_t>(dims[s]);
      size_t block = repeat * d;
      for (size_t i = 0; i < sub_dim; i++) {
        size_t digit = (i % block) / repeat;
        sub_offsets[i] += digit * strides[s];
      }
      repeat = block;
    }
  }

  size_t outer_base(size_t outer_index) const {
    size_t base = 0;
    for (size_t k = outer_dims.size(); k-- > 0;) {
      size_t d = static_cast<size_t>(outer_dims[k]);
      base += (outer_index % d) * outer_strides[k];
      outer_index /= d;
    }
    return base;
  }
};

void apply_matrix_range(std::vector<cdouble> &amps,
                        const SubspaceIndexer &idx,
                        const Eigen::MatrixXcd &matrix, size_t begin,
                        size_t end) {
  size_t sub = idx.sub_dim;
  std::vector<cdouble> scratch(sub);
  for (size_t o = begin; o < end; o++) {
    size_t base = idx.outer_base(o);
    for (size_t i = 0; i < sub; i++) {
      scratch[i] = amps[base + idx.sub_offsets[i]];
    }
    for (size_t r = 0; r < sub; r++) {
      cdouble acc = 0.0;
      for (size_t c = 0; c < sub; c++) {
        acc += matrix(static_cast<Eigen::Index>(r),
                      static_cast<Eigen::Index>(c)) *
               scratch[c];
      }
      amps[base + idx.sub_offsets[r]] = acc;
    }
  }
}

void check_matrix(const SubspaceIndexer &idx, const Eigen::MatrixXcd &matrix) {
  if (matrix.rows() != matrix.cols() ||
      static_cast<size_t>(matrix.rows()) != idx.sub_dim) {
    throw std::invalid_argument(
        "apply_matrix: matrix dimension does not match the selected sites");
  }
}

template <typename F>
auto blocked_sum_serial(size_t n, F &&term) {
  using R = decltype(term(size_t{0}));
  R total{};
  size_t nblocks = (n + kernels::kReductionBlock - 1) / kernels::kReductionBlock;
  for (size_t b = 0; b < nblocks; b++) {
    size_t lo = b * kernels::kReductionBlock;
    size_t hi = std::min(n, lo + kernels::kReductionBlock);
    R acc{};
    for (size_t i = lo; i < hi; i++) {
      acc += term(i);
    }
    total += acc;
  }
  return total;
}

template <typename F>
auto blocked_sum_parallel(size_t n, F &&term) {
  using R = decltype(term(size_t{0}));
  size_t nblocks = (n + kernels::kReductionBlock - 1) / kernels::kReductionBlock;
  std::vector<R> partial(nblocks);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(nblocks); b++) {
    size_t lo = static_cast<size_t>(b) * kernels::kReductionBlock;
    size_t hi = std::min(n, lo + kernels::kReductionBlock);
    R acc{};
    for (size_t i = lo; i < hi; i++) {
      acc += term(i);
    }
    partial[static_cast<size_t>(b)] = acc;
  }
  // Combine in index order: the result does not depend on the thread count.
  R total{};
  for (const R &p : partial) {
    total += p;
  }
  return total;
}

}  // namespace

void set_exec_mode(ExecMode mode) { g_exec_mode = mode; }

ExecMode exec_mode() { return g_exec_mode; }

void set_num_threads(int threads) {
  g_num_threads = std::max(0, threads);
  if (g_num_threads > 0) {
    omp_set_num_threads(g_num_threads);
  }
}

namespace kernels {

void apply_matrix_serial(std::vector<cdouble> &amps,
                         const std::vector<int> &dims,
                         const std::vector<int> &sites,
                         const Eigen::MatrixXcd &matrix) {
  SubspaceIndexer idx(dims, sites);
  check_matrix(idx, matrix);
  apply_matrix_range(amps, idx, matrix, 0, idx.n_outer);
}

void apply_matrix_parallel(std::vector<cdouble> &amps,
                           const std::vector<int> &dims,
                           const std::vector<int> &sites,
                           const Eigen::MatrixXcd &matrix) {
  SubspaceIndexer idx(dims, sites);
  check_matrix(idx, matrix);
  size_t n_outer = idx.n_outer;
#pragma omp parallel for schedule(static)
  for (long long o = 0; o < static_cast<long long>(n_outer); o++) {
    apply_matrix_range(amps, idx, matrix, static_cast<size_t>(o),
                       static_cast<size_t>(o) + 1);
  }
}

void apply_matrix(std::vector<cdouble> &amps, const std::vector<int> &dims,
                  const std::vector<int> &sites,
                  const Eigen::MatrixXcd &matrix) {
  if (use_parallel(amps.size())) {
    apply_matrix_parallel(amps, dims, sites, matrix);
  } else {
    apply_matrix_serial(amps, dims, sites, matrix);
  }
}

cdouble inner_product_serial(const std::vector<cdouble> &a,
                             const std::vector<cdouble> &b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("inner_product: size mismatch");
  }
  return blocked_sum_serial(a.size(),
                            [&](size_t i) { return std::conj(a[i]) * b[i]; });
}

cdouble inner_product_parallel(const std::vector<cdouble> &a,
                               const std::vector<cdouble> &b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("inner_product: size mismatch");
  }
  return blocked_sum_parallel(a.size(),
                              [&](size_t i) { return std::conj(a[i]) * b[i]; });
}

cdouble inner_product(const std::vector<cdouble> &a,
                      const std::vector<cdouble> &b) {
  if (use_parallel(a.size())) {
    return inner_product_parallel(a, b);
  }
  return inner_product_serial(a, b);
}

double norm_squared_serial(const std::vector<cdouble> &a) {
  return blocked_sum_serial(a.size(), [&](size_t i) { return std::norm(a[i]); });
}

double norm_squared_parallel(const std::vector<cdouble> &a) {
  return blocked_sum_parallel(a.size(),
                              [&](size_t i) { return std::norm(a[i]); });
}

double norm_squared(const std::vector<cdouble> &a) {
  if (use_parallel(a.size())) {
    return norm_squared_parallel(a);
  }
  return norm_squared_serial(a);
}

std::vector<double> site_marginal(const std::vector<cdouble> &amps,
                                  const std::vector<int> &dims, int site) {
  if (site < 0 || static_cast<size_t>(site) >= dims.size()) {
    throw std::invalid_argument("site_marginal: site index out of range");
  }
  size_t stride = 1;
  for (size_t i = dims.size(); i-- > static_cast<size_t>(site) + 1;) {
    stride *= static_cast<size_t>(dims[i]);
  }
  size_t d = static_cast<size_t>(dims[site]);
  std::vector<double> result(d, 0.0);
  // Deterministic regardless of backend: plain serial accumulation in index
  // order (the marginal is cheap relative to gate application).
  for (size_t i = 0; i < amps.size(); i++) {
    size_t digit = (i / stride) % d;
    result[digit] += std::norm(amps[i]);
  }
  return result;
}

}  // namespace kernels

}  // namespace quditlab
