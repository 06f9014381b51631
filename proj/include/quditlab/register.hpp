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

#ifndef QUDITLAB_REGISTER_HPP
#define QUDITLAB_REGISTER_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "quditlab/kernels.hpp"
#include "quditlab/rng.hpp"

namespace quditlab {

/// Dense state vector over a mixed-radix register.
///
/// Site 0 is the most significant digit of the flattened amplitude index, so
/// an (ancilla, spins...) register stores the ancilla in the leading tensor
/// slot. Local dimensions may differ per site (e.g. a qubit ancilla next to
/// qutrit spins).
class QuditRegister {
 public:
  /// Initializes |0...0>.
  explicit QuditRegister(std::vector<int> dims);

  static QuditRegister from_amplitudes(std::vector<int> dims,
                                       std::vector<cdouble> amps);

  int num_sites() const { return static_cast<int>(dims_.size()); }
  int dim(int site) const { return dims_[static_cast<size_t>(site)]; }
  const std::vector<int> &dims() const { return dims_; }
  size_t size() const { return amps_.size(); }

  const std::vector<cdouble> &amplitudes() const { return amps_; }
  std::vector<cdouble> &mutable_amplitudes() { return amps_; }
  cdouble amplitude(const std::vector<int> &digits) const;

  /// Flat index of a digit string; digit order matches site order.
  size_t flat_index(const std::vector<int> &digits) const;
  std::vector<int> digits_of(size_t flat) const;

  void set_basis_state(const std::vector<int> &digits);

  /// Applies a square matrix on the listed sites (first site = most
  /// significant sub-index of the matrix).
  void apply(const Eigen::MatrixXcd &matrix, const std::vector<int> &sites);

  void scale(cdouble factor);

  double norm_squared() const;
  void normalize();

  /// <this|other>.
  cdouble inner(const QuditRegister &other) const;

  /// Fidelity |<this|other>|^2 between normalized states.
  double fidelity(const QuditRegister &other) const;

  /// <psi|op|psi> on the listed sites; returns the complex value.
  cdouble expectation(const Eigen::MatrixXcd &op,
                      const std::vector<int> &sites) const;

  std::vector<double> site_marginal(int site) const;

  /// Projects site onto `digit`, renormalizes, returns the branch
  /// probability. Throws if the probability is (numerically) zero.
  double project_site(int site, int digit);

  /// Samples a measurement outcome on one site, collapses, returns outcome.
  int measure_site(int site, Philox4x32 &rng);

  /// Removes a site whose digit is definite (all amplitude in one digit).
  /// Used to drop a measured ancilla from the register.
  QuditRegister drop_definite_site(int site) const;

  /// Reduced density matrix on the listed sites (row/col index ordered with
  /// the first listed site most significant). Intended for small subsets.
  Eigen::MatrixXcd reduced_density(const std::vector<int> &sites) const;

  /// Trajectory depolarizing noise on each listed site: with probability p
  /// (drawn once per site) the site's digit is measured, then replaced by a
  /// uniformly random digit via a level permutation. Keeps the state pure;
  /// averaged over trajectories this is a depolarizing channel.
  void depolarize_site(int site, double p, Philox4x32 &rng);
  void depolarize_sites(const std::vector<int> &sites, double p,
                        Philox4x32 &rng);

 private:
  std::vector<int> dims_;
  std::vector<size_t> strides_;
  std::vector<cdouble> amps_;

  void rebuild_strides();
};

}  // namespace quditlab

#endif
