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
#include <stdexcept>

namespace quditlab {

namespace {

constexpr double kZeroBranchTolerance = 1e-14;

}  // namespace

QuditRegister::QuditRegister(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw std::invalid_argument("QuditRegister: need at least one site");
  }
  size_t total = 1;
  for (int d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("QuditRegister: site dimension must be >= 2");
    }
    total *= static_cast<size_t>(d);
  }
  amps_.assign(total, cdouble(0.0));
  amps_[0] = 1.0;
  rebuild_strides();
}

QuditRegister QuditRegister::from_amplitudes(std::vector<int> dims,
                                             std::vector<cdouble> amps) {
  QuditRegister reg(std::move(dims));
  if (amps.size() != reg.amps_.size()) {
    throw std::invalid_argument(
        "from_amplitudes: amplitude count does not match register dimensions");
  }
  reg.amps_ = std::move(amps);
  return reg;
}

void QuditRegister::rebuild_strides() {
  strides_.assign(dims_.size(), 1);
  for (size_t i = dims_.size(); i-- > 1;) {
    strides_[i - 1] = strides_[i] * static_cast<size_t>(dims_[i]);
  }
}

size_t QuditRegister::flat_index(const std::vector<int> &digits) const {
  if (digits.size() != dims_.size()) {
    throw std::invalid_argument("flat_index: digit count mismatch");
  }
  size_t idx = 0;
  for (size_t i = 0; i < digits.size(); i++) {
    if (digits[i] < 0 || digits[i] >= dims_[i]) {
      throw std::invalid_argument("flat_index: digit out of range");
    }
    idx += static_cast<size_t>(digits[i]) * strides_[i];
  }
  return idx;
}

std::vector<int> QuditRegister::digits_of(size_t flat) const {
  std::vector<int> digits(dims_.size());
  for (size_t i = 0; i < dims_.size(); i++) {
    digits[i] = static_cast<int>((flat / strides_[i]) %
                                 static_cast<size_t>(dims_[i]));
  }
  return digits;
}

cdouble QuditRegister::amplitude(const std::vector<int> &digits) const {
  return amps_[flat_index(digits)];
}

void QuditRegister::set_basis_state(const std::vector<int> &digits) {
  size_t idx = flat_index(digits);
  std::fill(amps_.begin(), amps_.end(), cdouble(0.0));
  amps_[idx] = 1.0;
}

void QuditRegister::apply(const Eigen::MatrixXcd &matrix,
                          const std::vector<int> &sites) {
  kernels::apply_matrix(amps_, dims_, sites, matrix);
}

void QuditRegister::scale(cdouble factor) {
  for (cdouble &a : amps_) {
    a *= factor;
  }
}

double QuditRegister::norm_squared() const {
  return kernels::norm_squared(amps_);
}

void QuditRegister::normalize() {
  double n2 = norm_squared();
  if (n2 <= 0.0) {
    throw std::runtime_error("normalize: zero state");
  }
  scale(1.0 / std::sqrt(n2));
}

cdouble QuditRegister::inner(const QuditRegister &other) const {
  if (dims_ != other.dims_) {
    throw std::invalid_argument("inner: register shape mismatch");
  }
  return kernels::inner_product(amps_, other.amps_);
}

double QuditRegister::fidelity(const QuditRegister &other) const {
  cdouble ov = inner(other);
  return std::norm(ov);
}

cdouble QuditRegister::expectation(const Eigen::MatrixXcd &op,
                                   const std::vector<int> &sites) const {
  QuditRegister tmp = *this;
  tmp.apply(op, sites);
  return inner(tmp);
}

std::vector<double> QuditRegister::site_marginal(int site) const {
  return kernels::site_marginal(amps_, dims_, site);
}

double QuditRegister::project_site(int site, int digit) {
  if (site < 0 || site >= num_sites()) {
    throw std::invalid_argument("project_site: site index out of range");
  }
  if (digit < 0 || digit >= dims_[static_cast<size_t>(site)]) {
    throw std::invalid_argument("project_site: digit out of range");
  }
  size_t stride = strides_[static_cast<size_t>(site)];
  size_t d = static_cast<size_t>(dims_[static_cast<size_t>(site)]);
  double prob = 0.0;
  for (size_t i = 0; i < amps_.size(); i++) {
    if ((i / stride) % d == static_cast<size_t>(digit)) {
      prob += std::norm(amps_[i]);
    } else {
      amps_[i] = 0.0;
    }
  }
  if (prob <= kZeroBranchTolerance) {
    throw std::runtime_error("project_site: branch has zero probability");
  }
  scale(1.0 / std::sqrt(prob));
  return prob;
}

int QuditRegister::measure_site(int site, Philox4x32 &rng) {
  std::vector<double> marginal = site_marginal(site);
  double u = rng.next_double();
  double acc = 0.0;
  int outcome = static_cast<int>(marginal.size()) - 1;
  for (size_t k = 0; k < marginal.size(); k++) {
    acc += marginal[k];
    if (u < acc) {
      outcome = static_cast<int>(k);
      break;
    }
  }
  project_site(site, outcome);
  return outcome;
}

QuditRegister QuditRegister::drop_definite_site(int site) const {
  std::vector<double> marginal = site_marginal(site);
  int digit = -1;
  for (size_t k = 0; k < marginal.size(); k++) {
    if (marginal[k] > 1e-12) {
      if (digit >= 0) {
        throw std::runtime_error(
            "drop_definite_site: site is not in a definite digit");
      }
      digit = static_cast<int>(k);
    }
  }
  if (digit < 0) {
    throw std::runtime_error("drop_definite_site: zero state");
  }
  std::vector<int> new_dims;
  for (int i = 0; i < num_sites(); i++) {
    if (i != site) {
      new_dims.push_back(dims_[static_cast<size_t>(i)]);
    }
  }
  size_t stride = strides_[static_cast<size_t>(site)];
  size_t d = static_cast<size_t>(dims_[static_cast<size_t>(site)]);
  std::vector<cdouble> new_amps;
  new_amps.reserve(amps_.size() / d);
  for (size_t i = 0; i < amps_.size(); i++) {
    if ((i / stride) % d == static_cast<size_t>(digit)) {
      new_amps.push_back(amps_[i]);
    }
  }
  return from_amplitudes(std::move(new_dims), std::move(new_amps));
}

Eigen::MatrixXcd QuditRegister::reduced_density(
    const std::vector<int> &sites) const {
  size_t sub = 1;
  for (int s : sites) {
    if (s < 0 || s >= num_sites()) {
      throw std::invalid_argument("reduced_density: site index out of range");
    }
    sub *= static_cast<size_t>(dims_[static_cast<size_t>(s)]);
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sub),
                                                static_cast<Eigen::Index>(sub));
  // Sub-index of a flat index in matrix ordering (first listed site most
  // significant).
  auto sub_index = [&](size_t flat) {
    size_t idx = 0;
    for (int s : sites) {
      size_t digit = (flat / strides_[static_cast<size_t>(s)]) %
                     static_cast<size_t>(dims_[static_cast<size_t>(s)]);
      idx = idx * static_cast<size_t>(dims_[static_cast<size_t>(s)]) + digit;
    }
    return idx;
  };
  auto env_index = [&](size_t flat) {
    size_t idx = 0;
    for (int i = 0; i < num_sites(); i++) {
      bool listed = false;
      for (int s : sites) {
        if (s == i) {
          listed = true;
          break;
        }
      }
      if (!listed) {
        size_t digit = (flat / strides_[static_cast<size_t>(i)]) %
                       static_cast<size_t>(dims_[static_cast<size_t>(i)]);
        idx = idx * static_cast<size_t>(dims_[static_cast<size_t>(i)]) + digit;
      }
    }
    return idx;
  };
  size_t env = amps_.size() / sub;
  // Group amplitudes by environment index, then accumulate outer products.
  std::vector<std::vector<cdouble>> grouped(env,
                                            std::vector<cdouble>(sub, 0.0));
  for (size_t i = 0; i < amps_.size(); i++) {
    grouped[env_index(i)][sub_index(i)] = amps_[i];
  }
  for (size_t e = 0; e < env; e++) {
    for (size_t r = 0; r < sub; r++) {
      for (size_t c = 0; c < sub; c++) {
        rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            grouped[e][r] * std::conj(grouped[e][c]);
      }
    }
  }
  return rho;
}

void QuditRegister::depolarize_site(int site, double p, Philox4x32 &rng) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("depolarize_site: p must be in [0, 1]");
  }
  if (p == 0.0) {
    return;
  }
  if (rng.next_double() >= p) {
    return;
  }
  int outcome = measure_site(site, rng);
  int d = dims_[static_cast<size_t>(site)];
  int target = static_cast<int>(rng.next_below(static_cast<uint64_t>(d)));
  if (target != outcome) {
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Identity(d, d);
    swap(outcome, outcome) = 0.0;
    swap(target, target) = 0.0;
    swap(outcome, target) = 1.0;
    swap(target, outcome) = 1.0;
    apply(swap, {site});
  }
}

void QuditRegister::depolarize_sites(const std::vector<int> &sites, double p,
                                     Philox4x32 &rng) {
  for (int s : sites) {
    depolarize_site(s, p, rng);
  }
}

}  // namespace quditlab
