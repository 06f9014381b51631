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

#include "quditlab/tomography.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "quditlab/measurement.hpp"

namespace quditlab {

namespace {

constexpr int kMaxTomographyQutrits = 3;

void check_qutrit_register(const QuditRegister &state, const char *what) {
  for (int s = 0; s < state.num_sites(); s++) {
    if (state.dim(s) != 3) {
      throw std::invalid_argument(std::string(what) +
                                  ": expected an all-qutrit register");
    }
  }
  if (state.num_sites() > kMaxTomographyQutrits) {
    throw std::invalid_argument(std::string(what) +
                                ": tomography supports up to 3 qutrits");
  }
}

void check_n(int n, const char *what) {
  if (n < 1 || n > kMaxTomographyQutrits) {
    throw std::invalid_argument(std::string(what) +
                                ": tomography supports 1..3 qutrits");
  }
}

int pow_int(int base, int exp) {
  int r = 1;
  for (int k = 0; k < exp; k++) {
    r *= base;
  }
  return r;
}

/// Single-qutrit design matrix: row (basis k, outcome m), column (i*3 + j).
/// The outcome probability is p = Tr(P rho) = sum_{ij} P_{ji} rho_{ij} with
/// P = v v^dag, so A[(k,m), 3i+j] = (v v^dag)_{ji} = v_j conj(v_i).
Eigen::MatrixXcd single_site_design() {
  std::array<Eigen::Matrix3cd, 4> bases = mub_bases();
  Eigen::MatrixXcd a(12, 9);
  for (int k = 0; k < 4; k++) {
    for (int m = 0; m < 3; m++) {
      Eigen::Vector3cd v = bases[static_cast<size_t>(k)].col(m);
      for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
          a(k * 3 + m, i * 3 + j) = v(j) * std::conj(v(i));
        }
      }
    }
  }
  return a;
}

/// Flattens (settings x outcomes) frequencies into the row order of the
/// n-fold Kronecker design matrix.
Eigen::VectorXcd flatten_frequencies(const Eigen::MatrixXd &freqs, int n) {
  int n_settings = pow_int(4, n);
  int n_outcomes = pow_int(3, n);
  if (freqs.rows() != n_settings || freqs.cols() != n_outcomes) {
    throw std::invalid_argument(
        "tomography: frequency matrix must be 4^n x 3^n");
  }
  // Kronecker row index interleaves per-site (basis, outcome) pairs:
  // row = sum over sites of (k_s * 3 + m_s) * 12^{n-1-s}.
  Eigen::VectorXcd flat(n_settings * n_outcomes);
  for (int setting = 0; setting < n_settings; setting++) {
    for (int outcome = 0; outcome < n_outcomes; outcome++) {
      int row = 0;
      int s_rem = setting;
      int o_rem = outcome;
      int s_place = n_settings / 4;
      int o_place = n_outcomes / 3;
      for (int site = 0; site < n; site++) {
        int k = s_rem / s_place;
        int m = o_rem / o_place;
        s_rem %= s_place;
        o_rem %= o_place;
        s_place /= 4;
        o_place /= 3;
        row = row * 12 + (k * 3 + m);
      }
      flat(row) = freqs(setting, outcome);
    }
  }
  return flat;
}

/// Reassembles the site-major vectorization (3i_s + j_s per site) into a
/// standard 3^n x 3^n matrix.
Eigen::MatrixXcd unmix_vectorization(const Eigen::VectorXcd &vec, int n) {
  int dim = pow_int(3, n);
  Eigen::MatrixXcd rho(dim, dim);
  for (int idx = 0; idx < vec.size(); idx++) {
    int rem = idx;
    int place = vec.size() / 9;
    int row = 0;
    int col = 0;
    for (int site = 0; site < n; site++) {
      int pair = rem / place;
      rem %= place;
      place /= 9;
      row = row * 3 + pair / 3;
      col = col * 3 + pair % 3;
    }
    rho(row, col) = vec(idx);
  }
  return rho;
}

/// All setting-outcome kets as columns (3^n x 12^n), in Kronecker row order.
Eigen::MatrixXcd measurement_kets(int n) {
  std::array<Eigen::Matrix3cd, 4> bases = mub_bases();
  Eigen::MatrixXcd kets = Eigen::MatrixXcd::Ones(1, 1);
  Eigen::MatrixXcd site(3, 12);
  for (int k = 0; k < 4; k++) {
    for (int m = 0; m < 3; m++) {
      site.col(k * 3 + m) = bases[static_cast<size_t>(k)].col(m);
    }
  }
  for (int s = 0; s < n; s++) {
    kets = Eigen::kroneckerProduct(kets, site).eval();
  }
  return kets;
}

}  // namespace

std::array<Eigen::Matrix3cd, 4> mub_bases() {
  const std::complex<double> w = std::exp(std::complex<double>(
      0.0, 2.0 * M_PI / 3.0));
  const std::complex<double> w2 = w * w;
  double s = 1.0 / std::sqrt(3.0);
  Eigen::Matrix3cd b0 = Eigen::Matrix3cd::Identity();
  Eigen::Matrix3cd b1, b2, b3;
  b1 << 1, 1, 1, 1, w, w2, 1, w2, w;
  b2 << 1, 1, 1, w2, 1, w, w2, w, 1;
  b3 << 1, 1, 1, w, w2, 1, w, 1, w2;
  b1 *= s;
  b2 *= s;
  b3 *= s;
  return {b0, b1, b2, b3};
}

int num_tomography_settings(int n_qutrits) {
  check_n(n_qutrits, "num_tomography_settings");
  return pow_int(4, n_qutrits);
}

std::vector<int> tomography_setting_tuple(int n_qutrits, int setting_index) {
  check_n(n_qutrits, "tomography_setting_tuple");
  int n_settings = pow_int(4, n_qutrits);
  if (setting_index < 0 || setting_index >= n_settings) {
    throw std::invalid_argument("tomography_setting_tuple: index out of range");
  }
  std::vector<int> tuple(static_cast<size_t>(n_qutrits));
  int place = n_settings / 4;
  for (int s = 0; s < n_qutrits; s++) {
    tuple[static_cast<size_t>(s)] = setting_index / place;
    setting_index %= place;
    place /= 4;
  }
  return tuple;
}

Eigen::MatrixXd tomography_exact_frequencies(const QuditRegister &state) {
  check_qutrit_register(state, "tomography_exact_frequencies");
  int n = state.num_sites();
  std::array<Eigen::Matrix3cd, 4> bases = mub_bases();
  int n_settings = pow_int(4, n);
  int n_outcomes = pow_int(3, n);
  Eigen::MatrixXd freqs(n_settings, n_outcomes);
  for (int setting = 0; setting < n_settings; setting++) {
    std::vector<int> tuple = tomography_setting_tuple(n, setting);
    QuditRegister rotated = state;
    for (int s = 0; s < n; s++) {
      rotated.apply(bases[static_cast<size_t>(tuple[static_cast<size_t>(s)])]
                        .adjoint(),
                    {s});
    }
    const std::vector<cdouble> &amps = rotated.amplitudes();
    for (int outcome = 0; outcome < n_outcomes; outcome++) {
      freqs(setting, outcome) = std::norm(amps[static_cast<size_t>(outcome)]);
    }
  }
  return freqs;
}

Eigen::MatrixXd tomography_sampled_frequencies(const QuditRegister &state,
                                               long shots_per_setting,
                                               Philox4x32 &rng) {
  check_qutrit_register(state, "tomography_sampled_frequencies");
  if (shots_per_setting <= 0) {
    throw std::invalid_argument(
        "tomography_sampled_frequencies: shots must be positive");
  }
  Eigen::MatrixXd exact = tomography_exact_frequencies(state);
  Eigen::MatrixXd freqs = Eigen::MatrixXd::Zero(exact.rows(), exact.cols());
  for (int setting = 0; setting < exact.rows(); setting++) {
    std::vector<double> probs(static_cast<size_t>(exact.cols()));
    for (int outcome = 0; outcome < exact.cols(); outcome++) {
      probs[static_cast<size_t>(outcome)] = exact(setting, outcome);
    }
    Philox4x32 sub = rng.substream(0x746f6d6fu, static_cast<uint64_t>(setting));
    std::vector<size_t> outcomes =
        sample_outcomes(probs, shots_per_setting, sub);
    for (size_t o : outcomes) {
      freqs(setting, static_cast<Eigen::Index>(o)) += 1.0;
    }
    freqs.row(setting) /= static_cast<double>(shots_per_setting);
  }
  return freqs;
}

Eigen::MatrixXcd tomography_linear(const Eigen::MatrixXd &frequencies,
                                   int n_qutrits) {
  check_n(n_qutrits, "tomography_linear");
  Eigen::MatrixXcd a1 = single_site_design();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a1);
  Eigen::MatrixXcd pinv1 = cod.pseudoInverse();
  Eigen::MatrixXcd pinv = Eigen::MatrixXcd::Ones(1, 1);
  for (int s = 0; s < n_qutrits; s++) {
    pinv = Eigen::kroneckerProduct(pinv, pinv1).eval();
  }
  Eigen::VectorXcd flat = flatten_frequencies(frequencies, n_qutrits);
  Eigen::VectorXcd rho_vec = pinv * flat;
  Eigen::MatrixXcd rho = unmix_vectorization(rho_vec, n_qutrits);
  // Hermitize: exact input already is, sampled input may not be.
  return 0.5 * (rho + rho.adjoint().eval());
}

Eigen::MatrixXcd tomography_mle(const Eigen::MatrixXd &frequencies,
                                int n_qutrits, int max_iterations,
                                double tolerance) {
  check_n(n_qutrits, "tomography_mle");
  if (max_iterations < 1) {
    throw std::invalid_argument("tomography_mle: need at least one iteration");
  }
  Eigen::MatrixXcd kets = measurement_kets(n_qutrits);
  Eigen::VectorXcd flat = flatten_frequencies(frequencies, n_qutrits);
  int dim = pow_int(3, n_qutrits);
  Eigen::MatrixXcd rho =
      Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  for (int iter = 0; iter < max_iterations; iter++) {
    // R = sum_j (f_j / p_j) |v_j><v_j|, computed as V W V^dag.
    Eigen::VectorXd weights(kets.cols());
    for (Eigen::Index j = 0; j < kets.cols(); j++) {
      double f = flat(j).real();
      if (f == 0.0) {
        weights(j) = 0.0;
        continue;
      }
      double p = std::max(
          1e-12, (kets.col(j).adjoint() * rho * kets.col(j))(0, 0).real());
      weights(j) = f / p;
    }
    Eigen::MatrixXcd r =
        kets * weights.asDiagonal() * kets.adjoint();
    Eigen::MatrixXcd next = r * rho * r;
    next = 0.5 * (next + next.adjoint().eval());
    double tr = next.trace().real();
    if (tr <= 0.0) {
      throw std::runtime_error("tomography_mle: iteration collapsed");
    }
    next /= tr;
    double step = trace_distance(next, rho);
    rho = next;
    if (step < tolerance) {
      break;
    }
  }
  return rho;
}

Eigen::MatrixXcd project_to_density_matrix(const Eigen::MatrixXcd &rho) {
  Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("project_to_density_matrix: diagonalization failed");
  }
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  double tr = vals.sum();
  if (tr <= 0.0) {
    throw std::runtime_error("project_to_density_matrix: zero matrix");
  }
  vals /= tr;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

double trace_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: shape mismatch");
  }
  Eigen::MatrixXcd diff = a - b;
  diff = 0.5 * (diff + diff.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double fidelity_with_state(const Eigen::MatrixXcd &rho,
                           const QuditRegister &state) {
  const std::vector<cdouble> &amps = state.amplitudes();
  if (static_cast<size_t>(rho.rows()) != amps.size()) {
    throw std::invalid_argument("fidelity_with_state: shape mismatch");
  }
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); i++) {
    psi(static_cast<Eigen::Index>(i)) = amps[i];
  }
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

Eigen::MatrixXcd density_of(const QuditRegister &state) {
  const std::vector<cdouble> &amps = state.amplitudes();
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); i++) {
    psi(static_cast<Eigen::Index>(i)) = amps[i];
  }
  return psi * psi.adjoint();
}

}  // namespace quditlab
