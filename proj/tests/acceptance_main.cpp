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

// Acceptance gate: one self-contained check per shipping criterion. Every
// criterion prints a single PASS/FAIL line with a short numeric summary, and
// the process exit status is the number of failed criteria. All tolerances
// are pinned here as named constants.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quditlab/aklt.hpp"
#include "quditlab/cluster.hpp"
#include "quditlab/experiment.hpp"
#include "quditlab/fitting.hpp"
#include "quditlab/gates.hpp"
#include "quditlab/measurement.hpp"
#include "quditlab/register.hpp"
#include "quditlab/report.hpp"
#include "quditlab/rng.hpp"
#include "quditlab/seqgen.hpp"
#include "quditlab/tomography.hpp"

namespace {

using namespace quditlab;

// --- pinned tolerances -----------------------------------------------------

constexpr double kFidelityDeficitTol = 1e-10;   // criteria 1, 7, 8
constexpr double kEnergyTol = 1e-9;             // criteria 2, 4
constexpr double kEstimatorSigmaBudget = 3.0;   // criterion 2
constexpr double kProcessFidelityFloor = 0.99;  // criterion 3
constexpr double kAncillaLeakTol = 1e-5;        // criterion 3
constexpr double kAlgebraTol = 1e-12;           // criterion 4
constexpr double kMatchedAngleTol = 1e-9;       // criterion 4
constexpr double kContrastTol = 1e-6;           // criterion 4
constexpr double kTransverseTol = 1e-10;        // criterion 5
constexpr double kStringOrderTol = 1e-9;        // criterion 5
constexpr double kProjectorTol = 1e-8;          // criterion 6
constexpr double kTableTol = 1e-10;             // criterion 7
constexpr double kBellTol = 1e-10;              // criterion 8
constexpr double kExactTomographyTol = 1e-8;    // criterion 9
constexpr double kLinearityTol = 1e-12;         // criterion 9
constexpr double kGenerationBudgetSeconds = 10.0;  // criterion 1
constexpr double kGateBudgetSeconds = 300.0;       // criterion 10
constexpr double kRegressionTol = 1e-9;            // criterion 11

// --- tiny harness ----------------------------------------------------------

struct Criterion {
  std::string title;
  bool passed = true;
  std::string note;

  void require(bool ok, const std::string &what) {
    if (!ok && passed) {
      passed = false;
      note = what;
    }
  }
};

std::string strf(const char *format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; i++) {
    grid[static_cast<size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) /
                 static_cast<double>(points - 1);
  }
  return grid;
}

QuditRegister probe_qutrit_state() {
  QuditRegister state = QuditRegister::from_amplitudes(
      {3}, {cdouble(2.0, 0.0), cdouble(1.0, 1.0), cdouble(-1.0, 0.5)});
  state.normalize();
  return state;
}

// --- criteria --------------------------------------------------------------

// 1. Sequential generation with the completed coupling unitary reproduces the
//    boundary MPS dictionary for every chain length and ancilla label pair.
Criterion criterion_sequential_generation() {
  Criterion c{"sequential generation matches the boundary MPS (n = 2..8)"};
  auto t0 = std::chrono::steady_clock::now();
  double worst_deficit = 0.0;
  for (int n = 2; n <= 8; n++) {
    for (int init = 0; init < 2; init++) {
      QuditRegister full = prepare_sequential(n, init, PrepMode::exact);
      for (int outcome = 0; outcome < 2; outcome++) {
        PreparedBranch branch = post_select_ancilla(full, outcome);
        QuditRegister reference = mps_reference_state(n, init, outcome);
        double deficit = 1.0 - branch.spins.fidelity(reference);
        worst_deficit = std::max(worst_deficit, deficit);
        c.require(deficit <= kFidelityDeficitTol,
                  strf("fidelity deficit %.3e at n=%d init=%d outcome=%d",
                       deficit, n, init, outcome));
        double expected = branch_probability(n, init, outcome);
        c.require(std::abs(branch.probability - expected) <= 1e-12,
                  strf("branch probability off at n=%d init=%d outcome=%d", n,
                       init, outcome));
      }
    }
  }
  double secs = seconds_since(t0);
  c.require(secs < kGenerationBudgetSeconds,
            strf("took %.1f s (budget %.0f s)", secs,
                 kGenerationBudgetSeconds));
  if (c.passed) {
    c.note = strf("worst fidelity deficit %.1e, %.2f s", worst_deficit, secs);
  }
  return c;
}

// 2. Every prepared branch is a zero-energy eigenstate, and the nine-setting
//    shot estimator reproduces that energy within its statistical error.
Criterion criterion_energy_witness() {
  Criterion c{"nine-setting energy estimator agrees with <H> = 0 (n = 2..5)"};
  double worst_sigma = 0.0;
  for (int n = 2; n <= 5; n++) {
    for (int init = 0; init < 2; init++) {
      for (int outcome = 0; outcome < 2; outcome++) {
        QuditRegister state = mps_reference_state(n, init, outcome);
        double exact = aklt_energy(state);
        c.require(std::abs(exact) <= kEnergyTol,
                  strf("<H> = %.2e at n=%d init=%d outcome=%d", exact, n, init,
                       outcome));
        c.require(
            std::abs(nine_setting_energy_exact(state) - exact) <= kEnergyTol,
            strf("estimator identity broken at n=%d", n));
      }
    }
    QuditRegister state = mps_reference_state(n, 0, 0);
    Philox4x32 rng(0xACCE0002u + static_cast<uint64_t>(n));
    EnergyEstimate est = nine_setting_energy_sampled(state, 10000, rng);
    c.require(est.std_error > 0.0, strf("zero std error at n=%d", n));
    double sigma = std::abs(est.energy) / est.std_error;
    worst_sigma = std::max(worst_sigma, sigma);
    c.require(sigma <= kEstimatorSigmaBudget,
              strf("estimator %.4f = %.1f SE from 0 at n=%d", est.energy,
                   sigma, n));
  }
  if (c.passed) {
    c.note = strf("worst estimator deviation %.2f SE at 10^4 shots/setting",
                  worst_sigma);
  }
  return c;
}

// 3. The 27-row ion-native pulse program composes to the coupling isometry
//    with high process fidelity, and circuit-mode preparation overlaps the
//    exact preparation.
Criterion criterion_circuit_compilation() {
  Criterion c{"ion-native pulse program composes to the coupling isometry"};
  const std::vector<PulseRow> &rows = ion_native_coupling_sequence();
  c.require(rows.size() == 27, strf("expected 27 rows, got %zu", rows.size()));
  Eigen::MatrixXcd u = compose_pulse_sequence(rows);
  Eigen::MatrixXcd v = coupling_isometry(aklt_mps_tensors());
  cdouble overlap_sum = 0.0;
  for (int alpha = 0; alpha < 2; alpha++) {
    Eigen::VectorXcd target = Eigen::VectorXcd::Zero(9);
    for (int row = 0; row < 6; row++) {
      target(row) = v(row, alpha);
    }
    int column = alpha * 3 + 2;  // ancilla level alpha, fresh spin in level 2
    overlap_sum += target.dot(u.col(column));
    double leak = u.col(column).segment(6, 3).squaredNorm();
    c.require(leak < kAncillaLeakTol,
              strf("ancilla leak %.2e on column %d", leak, column));
  }
  double process_fidelity = std::norm(overlap_sum) / 4.0;
  c.require(process_fidelity >= kProcessFidelityFloor,
            strf("process fidelity %.8f", process_fidelity));

  QuditRegister exact_full = prepare_sequential(2, 0, PrepMode::exact);
  QuditRegister circuit_full = prepare_sequential(2, 0, PrepMode::circuit);
  double worst_overlap = 1.0;
  for (int outcome = 0; outcome < 2; outcome++) {
    double fid = post_select_ancilla(exact_full, outcome)
                     .spins.fidelity(
                         post_select_ancilla(circuit_full, outcome).spins);
    worst_overlap = std::min(worst_overlap, fid);
    c.require(fid >= kProcessFidelityFloor,
              strf("circuit/exact branch overlap %.6f (outcome %d)", fid,
                   outcome));
  }
  if (c.passed) {
    c.note = strf("process fidelity %.8f, worst branch overlap %.8f",
                  process_fidelity, worst_overlap);
  }
  return c;
}

// 4. The edge operators close the spin-1/2 algebra and the two drives agree
//    point by point once the bulk angle is doubled; both conserve the energy
//    where they should and the two-spin chain precesses with full contrast.
Criterion criterion_edge_rabi() {
  Criterion c{"edge algebra closes; edge and bulk drives match at 2x angle"};
  EdgeAlgebra alg = left_edge_algebra();
  const cdouble two_i(0.0, 2.0);
  auto comm = [](const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a * b - b * a).eval();
  };
  c.require((comm(alg.x, alg.y) - two_i * alg.z).cwiseAbs().maxCoeff() <=
                kAlgebraTol,
            "[X, Y] != 2iZ");
  c.require((comm(alg.y, alg.z) - two_i * alg.x).cwiseAbs().maxCoeff() <=
                kAlgebraTol,
            "[Y, Z] != 2iX");
  c.require((comm(alg.z, alg.x) - two_i * alg.y).cwiseAbs().maxCoeff() <=
                kAlgebraTol,
            "[Z, X] != 2iY");
  Eigen::MatrixXcd support = alg.x * alg.x;
  c.require((alg.y * alg.y - support).cwiseAbs().maxCoeff() <= kAlgebraTol,
            "Y^2 != X^2");
  c.require((alg.z * alg.z - support).cwiseAbs().maxCoeff() <= kAlgebraTol,
            "Z^2 != X^2");
  c.require((support * support - support).cwiseAbs().maxCoeff() <= kAlgebraTol,
            "common square is not a projector");

  double worst_mismatch = 0.0;
  for (int n = 2; n <= 5; n++) {
    QuditRegister initial = mps_reference_state(n, 1, 0);
    for (int k = 0; k <= 8; k++) {
      double theta = 2.0 * M_PI * static_cast<double>(k) / 8.0;
      QuditRegister edge = edge_rotated_state(initial, theta);
      QuditRegister bulk = bulk_rotated_state(initial, 2.0 * theta);
      for (const Eigen::MatrixXcd *op : {&alg.x, &alg.y, &alg.z}) {
        double diff = std::abs(edge.expectation(*op, {0, 1}).real() -
                               bulk.expectation(*op, {0, 1}).real());
        worst_mismatch = std::max(worst_mismatch, diff);
        c.require(diff <= kMatchedAngleTol,
                  strf("edge/bulk mismatch %.2e at n=%d theta=%.3f", diff, n,
                       theta));
      }
      c.require(std::abs(aklt_energy(bulk)) <= kEnergyTol,
                strf("bulk drive broke <H> = 0 at n=%d", n));
      if (n == 2) {
        c.require(std::abs(aklt_energy(edge)) <= kEnergyTol,
                  "edge drive broke <H> = 0 at n=2");
      }
    }
  }

  std::vector<double> thetas = linspace(0.0, 4.0 * M_PI, 33);
  std::vector<RabiPoint> traj =
      edge_rabi_trajectory(mps_reference_state(2, 1, 0), thetas);
  std::vector<double> z_values;
  z_values.reserve(traj.size());
  for (const RabiPoint &p : traj) {
    z_values.push_back(p.z);
  }
  DampedCosineFit fit = fit_damped_cosine(thetas, z_values);
  c.require(fit.converged, "two-spin contrast fit did not converge");
  c.require(std::abs(fit.contrast() - 1.0) <= kContrastTol,
            strf("two-spin contrast %.8f", fit.contrast()));
  if (c.passed) {
    c.note = strf("worst matched-angle mismatch %.1e, contrast %.8f",
                  worst_mismatch, fit.contrast());
  }
  return c;
}

// 5. Prepared states carry no transverse magnetization, two-point
//    correlations decay with distance, and the hidden string order matches
//    the closed-form values.
Criterion criterion_ground_state_observables() {
  Criterion c{"transverse moments vanish, correlations decay, string order"};
  for (int n = 4; n <= 5; n++) {
    for (int init = 0; init < 2; init++) {
      for (int outcome = 0; outcome < 2; outcome++) {
        QuditRegister state = mps_reference_state(n, init, outcome);
        for (const auto &site : local_spin_profile(state)) {
          c.require(std::abs(site[0]) <= kTransverseTol &&
                        std::abs(site[1]) <= kTransverseTol,
                    strf("transverse moment at n=%d init=%d outcome=%d", n,
                         init, outcome));
        }
      }
    }
  }

  // The boundary spins carry a net moment, so it is the connected
  // correlation that decays with distance (by ~1/3 per site).
  QuditRegister chain = mps_reference_state(5, 0, 0);
  std::vector<std::array<double, 3>> moments = local_spin_profile(chain);
  double previous = 2.0;
  for (int j = 1; j <= 4; j++) {
    double zz = std::abs(two_spin_correlation(chain, 0, j)(2, 2) -
                         moments[0][2] * moments[static_cast<size_t>(j)][2]);
    c.require(zz < previous,
              strf("connected |<S^z_1 S^z_%d>| = %.4f did not decay", j + 1,
                   zz));
    previous = zz;
  }

  struct StringGolden {
    int n, init, outcome;
    char axis;
    double value;
  };
  const StringGolden goldens[] = {
      {4, 0, 0, 'z', -20.0 / 41.0}, {4, 0, 0, 'x', -18.0 / 41.0},
      {4, 0, 1, 'z', -0.4},         {4, 0, 1, 'x', -0.45},
      {5, 0, 0, 'z', -52.0 / 121.0}, {5, 0, 0, 'x', -54.0 / 121.0},
      {5, 0, 1, 'z', -28.0 / 61.0}, {5, 0, 1, 'x', -27.0 / 61.0},
  };
  double worst = 0.0;
  for (const StringGolden &g : goldens) {
    QuditRegister state = mps_reference_state(g.n, g.init, g.outcome);
    double value = string_order_exact(state, g.axis);
    worst = std::max(worst, std::abs(value - g.value));
    c.require(std::abs(value - g.value) <= kStringOrderTol,
              strf("string order %c at n=%d (%d,%d): %.10f vs %.10f", g.axis,
                   g.n, g.init, g.outcome, value, g.value));
  }
  if (c.passed) {
    c.note = strf("worst string-order deviation %.1e", worst);
  }
  return c;
}

// 6. Both models have a four-fold degenerate ground manifold and the four
//    preparable states span it exactly.
Criterion criterion_ground_manifolds() {
  Criterion c{"four-fold ground manifolds equal the prepared spans"};
  double worst = 0.0;
  for (int n = 2; n <= 6; n++) {
    Eigen::MatrixXcd kernel = aklt_kernel_projector(n);
    c.require(std::abs(kernel.trace().real() - 4.0) <= kProjectorTol,
              strf("spin-1 kernel dimension != 4 at n=%d", n));
    double diff =
        (kernel - prepared_span_projector(n)).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
    c.require(diff <= kProjectorTol,
              strf("spin-1 projector mismatch %.2e at n=%d", diff, n));
  }
  Eigen::MatrixXcd ground = cluster_ground_projector(6);
  c.require(std::abs(ground.trace().real() - 4.0) <= kProjectorTol,
            "cluster ground dimension != 4");
  double diff =
      (ground - cluster_prepared_span_projector(6)).cwiseAbs().maxCoeff();
  worst = std::max(worst, diff);
  c.require(diff <= kProjectorTol,
            strf("cluster projector mismatch %.2e", diff));
  if (c.passed) {
    c.note = strf("worst projector mismatch %.1e", worst);
  }
  return c;
}

// 7. The bulk/edge correspondence table reproduces the expected sign pattern
//    with unit-magnitude stabilizer readings, and each operator pair that is
//    equal on the stabilizer group produces the same state.
Criterion criterion_bulk_edge_table() {
  Criterion c{"bulk/edge correspondence table has the pinned sign pattern"};
  QuditRegister state = cluster_state(6, ClusterMethod::cz_ladder);
  std::vector<ClusterTableRow> rows = bulk_edge_correspondence(state);
  c.require(rows.size() == 5, strf("expected 5 rows, got %zu", rows.size()));
  const double expected_left[] = {1.0, 1.0, 1.0, -1.0, -1.0};
  const double expected_right[] = {1.0, -1.0, -1.0, 1.0, 1.0};
  for (size_t r = 0; r < rows.size() && r < 5; r++) {
    c.require(std::abs(rows[r].bulk_mean - 1.0) <= kTableTol,
              strf("row %zu bulk mean %.12f", r, rows[r].bulk_mean));
    c.require(std::abs(rows[r].left_edge - expected_left[r]) <= kTableTol,
              strf("row %zu left edge %.12f", r, rows[r].left_edge));
    c.require(std::abs(rows[r].right_edge - expected_right[r]) <= kTableTol,
              strf("row %zu right edge %.12f", r, rows[r].right_edge));
  }
  auto applied_state = [&](size_t r) {
    QuditRegister s = state;
    apply_pauli(s, rows[r].applied);
    return s;
  };
  if (rows.size() == 5) {
    double pair_a = applied_state(1).fidelity(applied_state(2));
    double pair_b = applied_state(3).fidelity(applied_state(4));
    c.require(1.0 - pair_a <= kFidelityDeficitTol,
              strf("edge/graph pair fidelity %.12f", pair_a));
    c.require(1.0 - pair_b <= kFidelityDeficitTol,
              strf("edge/graph pair fidelity %.12f", pair_b));
    if (c.passed) {
      c.note = strf("pair fidelities %.12f, %.12f", pair_a, pair_b);
    }
  }
  return c;
}

// 8. Projecting the interior qubits leaves every one of the 16 branches in
//    the Bell state predicted by its outcome parities.
Criterion criterion_bell_branches() {
  Criterion c{"all 16 interior-projection branches reach the labeled Bell "
              "state"};
  QuditRegister state = cluster_state(6, ClusterMethod::cz_ladder);
  std::vector<BellBranch> branches = bell_projection_branches(state);
  c.require(branches.size() == 16,
            strf("expected 16 branches, got %zu", branches.size()));
  double worst_fidelity = 1.0;
  for (const BellBranch &b : branches) {
    worst_fidelity = std::min(worst_fidelity, b.fidelity);
    c.require(std::abs(b.probability - 1.0 / 16.0) <= kBellTol,
              strf("branch probability %.12f", b.probability));
    c.require(1.0 - b.fidelity <= kBellTol,
              strf("branch fidelity %.12f", b.fidelity));
    c.require(std::abs(b.x0zn - static_cast<double>(b.a)) <= kBellTol &&
                  std::abs(b.z0xn - static_cast<double>(b.b)) <= kBellTol &&
                  std::abs(b.y0yn - static_cast<double>(b.a * b.b)) <=
                      kBellTol,
              "branch correlators disagree with the parity labels");
  }
  if (c.passed) {
    c.note = strf("worst branch fidelity deficit %.1e", 1.0 - worst_fidelity);
  }
  return c;
}

// 9. Linear inversion is exact on exact frequencies (and linear, hence
//    unbiased), and the sampled reconstruction error shrinks with shots.
Criterion criterion_tomography() {
  Criterion c{"tomography is exact on exact frequencies and improves with "
              "shots"};
  QuditRegister probe = probe_qutrit_state();
  QuditRegister pair = mps_reference_state(2, 0, 0);
  const std::pair<int, const QuditRegister *> exact_cases[] = {{1, &probe},
                                                               {2, &pair}};
  for (const auto &[n, state] : exact_cases) {
    Eigen::MatrixXd freqs = tomography_exact_frequencies(*state);
    Eigen::MatrixXcd rho = tomography_linear(freqs, n);
    Eigen::MatrixXcd truth = density_of(*state);
    c.require(trace_distance(rho, truth) <= kExactTomographyTol,
              strf("exact-path trace distance at n=%d", n));
    c.require((rho - truth).cwiseAbs().maxCoeff() <= kLinearityTol,
              strf("linear inversion biased at n=%d", n));
  }

  // Linearity of the inversion map (this is what makes the shot-averaged
  // estimator unbiased).
  Philox4x32 rng_a(0xACCE0009u, 1), rng_b(0xACCE0009u, 2);
  Eigen::MatrixXd fa = tomography_sampled_frequencies(probe, 200, rng_a);
  Eigen::MatrixXd fb = tomography_sampled_frequencies(probe, 200, rng_b);
  Eigen::MatrixXcd mix = tomography_linear(0.25 * fa + 0.75 * fb, 1);
  Eigen::MatrixXcd combo =
      0.25 * tomography_linear(fa, 1) + 0.75 * tomography_linear(fb, 1);
  c.require((mix - combo).cwiseAbs().maxCoeff() <= kLinearityTol,
            "inversion is not linear in the frequencies");

  Eigen::MatrixXcd truth = density_of(probe);
  const long shot_grid[] = {100, 1000, 10000};
  double medians[3];
  for (int g = 0; g < 3; g++) {
    std::vector<double> distances;
    distances.reserve(50);
    for (uint64_t seed_index = 0; seed_index < 50; seed_index++) {
      Philox4x32 rng(0xACCE0009u, 100 + seed_index);
      Eigen::MatrixXd freqs =
          tomography_sampled_frequencies(probe, shot_grid[g], rng);
      Eigen::MatrixXcd rho =
          project_to_density_matrix(tomography_linear(freqs, 1));
      distances.push_back(trace_distance(rho, truth));
    }
    std::sort(distances.begin(), distances.end());
    medians[g] = 0.5 * (distances[24] + distances[25]);
  }
  c.require(medians[0] > medians[1] && medians[1] > medians[2],
            strf("medians not decreasing: %.4f, %.4f, %.4f", medians[0],
                 medians[1], medians[2]));
  if (c.passed) {
    c.note = strf("median trace distance %.4f -> %.4f -> %.4f over 50 seeds",
                  medians[0], medians[1], medians[2]);
  }
  return c;
}

// 10. The full pipeline is deterministic (byte-identical reruns at fixed
//     seed) and the whole gate fits the runtime budget.
Criterion criterion_determinism(std::chrono::steady_clock::time_point gate_t0) {
  Criterion c{"reruns are byte-identical and the gate fits its time budget"};
  ExperimentConfig config = ExperimentConfig::parse(
      "experiment = aklt-energy\nn = 4\nshots = 2000\nseed = 31\n");
  std::string first = render_report(run_experiment(config), ReportFormat::doc);
  std::string second =
      render_report(run_experiment(config), ReportFormat::doc);
  c.require(!first.empty() && first == second,
            "rerun of a sampled experiment changed bytes");
  std::string table_first =
      render_report(run_experiment(config), ReportFormat::table);
  std::string table_second =
      render_report(run_experiment(config), ReportFormat::table);
  c.require(!table_first.empty() && table_first == table_second,
            "rerun changed table-format bytes");

  QuditRegister probe = probe_qutrit_state();
  Philox4x32 rng_a(77, 0), rng_b(77, 0);
  Eigen::MatrixXd fa = tomography_sampled_frequencies(probe, 500, rng_a);
  Eigen::MatrixXd fb = tomography_sampled_frequencies(probe, 500, rng_b);
  c.require((fa - fb).cwiseAbs().maxCoeff() == 0.0,
            "sampled frequencies differ between identical generators");

  double secs = seconds_since(gate_t0);
  c.require(secs < kGateBudgetSeconds,
            strf("gate took %.1f s (budget %.0f s)", secs, kGateBudgetSeconds));
  if (c.passed) {
    c.note = strf("report bytes stable, gate at %.1f s", secs);
  }
  return c;
}

// 11. With two-site depolarizing noise at p = 0.02 the prepared energy rises
//     above zero and the edge Rabi contrast drops below one; both
//     trajectory-averaged values are pinned as regression constants.
Criterion criterion_noise_trends() {
  Criterion c{"p = 0.02 noise raises <H> and damps the Rabi contrast "
              "(pinned)"};
  constexpr double kNoiseP = 0.02;
  constexpr int kTrajectories = 300;
  constexpr double kPinnedNoisyEnergy = 0.105811615187;
  constexpr int kPinnedKeptTrajectories = 296;
  constexpr double kPinnedNoisyContrast = 0.963468653196;

  Philox4x32 root(0xACCE000Bu);
  double energy_sum = 0.0;
  int kept = 0;
  for (int t = 0; t < kTrajectories; t++) {
    Philox4x32 sub = root.substream(0x6e6f6973u, static_cast<uint64_t>(t));
    QuditRegister full =
        prepare_sequential(4, 0, PrepMode::exact, kNoiseP, &sub);
    if (full.site_marginal(0)[0] <= 1e-12) {
      continue;  // noise collapsed the ancilla into the other branch
    }
    energy_sum += aklt_energy(post_select_ancilla(full, 0).spins);
    kept++;
  }
  double mean_energy = energy_sum / static_cast<double>(kept);
  c.require(mean_energy > 0.01,
            strf("noisy preparation energy %.6f not clearly above 0",
                 mean_energy));
  c.require(kept == kPinnedKeptTrajectories,
            strf("kept %d trajectories (pinned %d)", kept,
                 kPinnedKeptTrajectories));
  c.require(std::abs(mean_energy - kPinnedNoisyEnergy) <= kRegressionTol,
            strf("noisy energy %.12f drifted from pin %.12f", mean_energy,
                 kPinnedNoisyEnergy));

  QuditRegister initial = mps_reference_state(4, 1, 0);
  EdgeAlgebra alg = left_edge_algebra();
  double z0 = initial.expectation(alg.z, {0, 1}).real();
  std::vector<double> thetas = linspace(0.0, 4.0 * M_PI, 21);
  std::vector<double> z_mean(thetas.size(), 0.0);
  constexpr int kDriveTrajectories = 200;
  for (size_t i = 0; i < thetas.size(); i++) {
    for (int t = 0; t < kDriveTrajectories; t++) {
      Philox4x32 sub = root.substream(static_cast<uint64_t>(i),
                                      static_cast<uint64_t>(t));
      QuditRegister rotated =
          edge_rotated_state(initial, thetas[i], kNoiseP, &sub);
      z_mean[i] += rotated.expectation(alg.z, {0, 1}).real();
    }
    z_mean[i] /= static_cast<double>(kDriveTrajectories);
  }
  DampedCosineFit fit = fit_damped_cosine(thetas, z_mean);
  c.require(fit.converged, "noisy Rabi fit did not converge");
  double contrast = fit.contrast() / std::abs(z0);
  c.require(contrast < 0.999,
            strf("noisy contrast %.6f not clearly below 1", contrast));
  c.require(std::abs(contrast - kPinnedNoisyContrast) <= kRegressionTol,
            strf("noisy contrast %.12f drifted from pin %.12f", contrast,
                 kPinnedNoisyContrast));
  if (c.passed) {
    c.note = strf("mean <H> %.6f (clean 0), contrast %.6f (clean 1)",
                  mean_energy, contrast);
  } else {
    // Keep the measured values visible so fresh pins can be copied in.
    c.note += strf(" [measured energy %.12f kept %d contrast %.12f]",
                   mean_energy, kept, contrast);
  }
  return c;
}

}  // namespace

int main() {
  auto gate_t0 = std::chrono::steady_clock::now();
  std::vector<Criterion> results;
  results.push_back(criterion_sequential_generation());
  results.push_back(criterion_energy_witness());
  results.push_back(criterion_circuit_compilation());
  results.push_back(criterion_edge_rabi());
  results.push_back(criterion_ground_state_observables());
  results.push_back(criterion_ground_manifolds());
  results.push_back(criterion_bulk_edge_table());
  results.push_back(criterion_bell_branches());
  results.push_back(criterion_tomography());
  Criterion noise = criterion_noise_trends();
  results.push_back(criterion_determinism(gate_t0));
  results.push_back(noise);

  int failed = 0;
  for (size_t i = 0; i < results.size(); i++) {
    const Criterion &c = results[i];
    if (!c.passed) {
      failed++;
    }
    std::printf("[%2zu/11] %s  %s%s%s\n", i + 1, c.passed ? "PASS" : "FAIL",
                c.title.c_str(), c.note.empty() ? "" : " -- ",
                c.note.c_str());
  }
  std::printf("%d/11 criteria passed\n",
              static_cast<int>(results.size()) - failed);
  return failed;
}
