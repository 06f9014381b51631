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

#include "quditlab/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "quditlab/aklt.hpp"
#include "quditlab/cluster.hpp"
#include "quditlab/fitting.hpp"
#include "quditlab/seqgen.hpp"
#include "quditlab/tomography.hpp"

namespace quditlab {

namespace {

std::string trim(const std::string &s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    begin++;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    end--;
  }
  return s.substr(begin, end - begin);
}

bool valid_key(const std::string &key) {
  if (key.empty()) {
    return false;
  }
  for (char c : key) {
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)) && c != '_') {
      return false;
    }
  }
  return true;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string &text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (!valid_key(key)) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": invalid key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty value for '" + key + "'");
    }
    config.set(key, value);
  }
  return config;
}

ExperimentConfig ExperimentConfig::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void ExperimentConfig::set(const std::string &key, const std::string &value) {
  if (find(key) != nullptr) {
    throw ConfigError("duplicate config key '" + key + "'");
  }
  entries_.emplace_back(key, value);
}

const std::string *ExperimentConfig::find(const std::string &key) const {
  for (const auto &[k, v] : entries_) {
    if (k == key) {
      return &v;
    }
  }
  return nullptr;
}

bool ExperimentConfig::has(const std::string &key) const {
  return find(key) != nullptr;
}

std::string ExperimentConfig::get_string(const std::string &key,
                                         const std::string &fallback) const {
  const std::string *v = find(key);
  return v != nullptr ? *v : fallback;
}

std::string ExperimentConfig::require_string(const std::string &key) const {
  const std::string *v = find(key);
  if (v == nullptr) {
    throw ConfigError("missing required config key '" + key + "'");
  }
  return *v;
}

long ExperimentConfig::get_int(const std::string &key, long fallback) const {
  const std::string *v = find(key);
  if (v == nullptr) {
    return fallback;
  }
  size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(*v, &pos);
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not an integer: " + *v);
  }
  if (pos != v->size()) {
    throw ConfigError("config key '" + key + "': not an integer: " + *v);
  }
  return value;
}

double ExperimentConfig::get_double(const std::string &key,
                                    double fallback) const {
  const std::string *v = find(key);
  if (v == nullptr) {
    return fallback;
  }
  size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(*v, &pos);
  } catch (const std::exception &) {
    throw ConfigError("config key '" + key + "': not a number: " + *v);
  }
  if (pos != v->size() || !std::isfinite(value)) {
    throw ConfigError("config key '" + key + "': not a number: " + *v);
  }
  return value;
}

std::string ExperimentConfig::emit() const {
  std::vector<std::pair<std::string, std::string>> sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const auto &[k, v] : sorted) {
    out << k << " = " << v << "\n";
  }
  return out.str();
}

uint64_t ExperimentConfig::hash() const { return fnv1a64(emit()); }

std::vector<std::string> ExperimentConfig::keys() const {
  std::vector<std::string> result;
  result.reserve(entries_.size());
  for (const auto &[k, v] : entries_) {
    result.push_back(k);
  }
  return result;
}

bool ExperimentConfig::operator==(const ExperimentConfig &other) const {
  return emit() == other.emit();
}

namespace {

// ---------------------------------------------------------------------------
// Shared option parsing
// ---------------------------------------------------------------------------

void check_allowed_keys(const ExperimentConfig &config,
                        const std::set<std::string> &allowed) {
  for (const std::string &key : config.keys()) {
    if (key != "experiment" && allowed.find(key) == allowed.end()) {
      throw ConfigError("unknown config key '" + key + "' for experiment '" +
                        config.get_string("experiment", "") + "'");
    }
  }
}

int parse_ancilla_label(const ExperimentConfig &config, const std::string &key,
                        const std::string &fallback) {
  std::string v = config.get_string(key, fallback);
  if (v == "up") {
    return 0;
  }
  if (v == "down") {
    return 1;
  }
  throw ConfigError("config key '" + key + "': expected 'up' or 'down'");
}

PrepMode parse_prep_mode(const ExperimentConfig &config) {
  std::string v = config.get_string("mode", "exact");
  if (v == "exact") {
    return PrepMode::exact;
  }
  if (v == "circuit") {
    return PrepMode::circuit;
  }
  throw ConfigError("config key 'mode': expected 'exact' or 'circuit'");
}

ClusterMethod parse_cluster_method(const ExperimentConfig &config) {
  std::string v = config.get_string("method", "cz");
  if (v == "cz") {
    return ClusterMethod::cz_ladder;
  }
  if (v == "ms") {
    return ClusterMethod::ms_ladder;
  }
  throw ConfigError("config key 'method': expected 'cz' or 'ms'");
}

int parse_n(const ExperimentConfig &config, int fallback, int lo, int hi) {
  long n = config.get_int("n", fallback);
  if (n < lo || n > hi) {
    throw ConfigError("config key 'n': must be in [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(n);
}

double parse_noise(const ExperimentConfig &config) {
  double p = config.get_double("noise_p", 0.0);
  if (p < 0.0 || p > 1.0) {
    throw ConfigError("config key 'noise_p': must be in [0, 1]");
  }
  return p;
}

long parse_shots(const ExperimentConfig &config, long fallback) {
  long shots = config.get_int("shots", fallback);
  if (shots < 0) {
    throw ConfigError("config key 'shots': must be >= 0");
  }
  return shots;
}

uint64_t parse_seed(const ExperimentConfig &config) {
  return static_cast<uint64_t>(config.get_int("seed", 12345));
}

std::vector<double> parse_theta_grid(const ExperimentConfig &config) {
  long points = config.get_int("theta_points", 21);
  double max = config.get_double("theta_max", 4.0 * M_PI);
  if (points < 2) {
    throw ConfigError("config key 'theta_points': must be >= 2");
  }
  if (max <= 0.0) {
    throw ConfigError("config key 'theta_max': must be positive");
  }
  std::vector<double> grid(static_cast<size_t>(points));
  for (long i = 0; i < points; i++) {
    grid[static_cast<size_t>(i)] =
        max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

ReportDocument make_document(const ExperimentConfig &config) {
  ReportDocument doc;
  doc.experiment = config.require_string("experiment");
  std::vector<std::string> keys = config.keys();
  std::vector<std::pair<std::string, std::string>> sorted;
  for (const std::string &k : keys) {
    sorted.emplace_back(k, config.get_string(k, ""));
  }
  std::sort(sorted.begin(), sorted.end());
  doc.config = std::move(sorted);
  doc.config_hash = hex64(config.hash());
  return doc;
}

/// The spin state the AKLT experiments act on: the ideal boundary-resolved
/// chain, or (with noise) a single noisy sequential-preparation trajectory
/// post-selected on the requested ancilla outcome.
QuditRegister aklt_state_for(const ExperimentConfig &config, int n, int init,
                             int outcome, double noise_p, Philox4x32 &rng) {
  (void)config;
  if (noise_p <= 0.0) {
    return mps_reference_state(n, init, outcome);
  }
  QuditRegister full =
      prepare_sequential(n, init, PrepMode::exact, noise_p, &rng);
  return post_select_ancilla(full, outcome).spins;
}

std::optional<DampedCosineFit> add_fit_scalars(
    ReportDocument &doc, const std::vector<double> &thetas,
    const std::vector<double> &values, const std::string &prefix) {
  auto [min_it, max_it] = std::minmax_element(thetas.begin(), thetas.end());
  if (thetas.size() < 5 || *max_it - *min_it < 2.0 * M_PI - 1e-9) {
    return std::nullopt;  // grid too small for a meaningful fit
  }
  DampedCosineFit fit = fit_damped_cosine(thetas, values);
  doc.scalars.emplace_back(prefix + "_contrast", num_cell(fit.contrast()));
  doc.scalars.emplace_back(prefix + "_phase", num_cell(fit.phase));
  doc.scalars.emplace_back(prefix + "_decay_rate", num_cell(fit.decay_rate));
  doc.scalars.emplace_back(prefix + "_offset", num_cell(fit.offset));
  doc.scalars.emplace_back(prefix + "_residual_rms",
                           num_cell(fit.residual_rms));
  return fit;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

ReportDocument run_aklt_prepare(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "init", "mode", "noise_p", "seed"});
  int n = parse_n(config, 3, 2, 8);
  int init = parse_ancilla_label(config, "init", "up");
  PrepMode mode = parse_prep_mode(config);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister full = prepare_sequential(n, init, mode, noise_p, &rng);
  if (mode == PrepMode::circuit) {
    doc.scalars.emplace_back("ancilla_leak",
                             num_cell(full.site_marginal(0)[2]));
  }
  ReportTable table;
  table.name = "branches";
  table.columns = {"outcome", "probability", "expected_probability",
                   "fidelity_vs_mps", "energy"};
  for (int outcome = 0; outcome < 2; outcome++) {
    PreparedBranch branch = post_select_ancilla(full, outcome);
    QuditRegister reference = mps_reference_state(n, init, outcome);
    table.rows.push_back({
        text_cell(outcome == 0 ? "up" : "down"),
        num_cell(branch.probability),
        num_cell(branch_probability(n, init, outcome)),
        num_cell(branch.spins.fidelity(reference)),
        num_cell(aklt_energy(branch.spins)),
    });
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

ReportDocument run_aklt_energy(const ExperimentConfig &config) {
  check_allowed_keys(config,
                     {"n", "init", "outcome", "shots", "noise_p", "seed"});
  int n = parse_n(config, 4, 2, 8);
  int init = parse_ancilla_label(config, "init", "up");
  int outcome = parse_ancilla_label(config, "outcome", "up");
  long shots = parse_shots(config, 10000);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = aklt_state_for(config, n, init, outcome, noise_p, rng);
  doc.scalars.emplace_back("energy_exact", num_cell(aklt_energy(state)));
  doc.scalars.emplace_back("estimator_exact",
                           num_cell(nine_setting_energy_exact(state)));
  if (shots > 0) {
    EnergyEstimate est = nine_setting_energy_sampled(state, shots, rng);
    doc.scalars.emplace_back("estimator_energy", num_cell(est.energy));
    doc.scalars.emplace_back("estimator_std_error", num_cell(est.std_error));
    ReportTable table;
    table.name = "settings";
    table.columns = {"name", "mean", "std_error", "shots"};
    for (const SettingEstimate &s : est.settings) {
      table.rows.push_back({
          text_cell(s.name),
          num_cell(s.stats.mean),
          num_cell(s.stats.std_error),
          int_cell(s.stats.shots),
      });
    }
    doc.tables.push_back(std::move(table));
  }
  return doc;
}

ReportDocument run_rabi(const ExperimentConfig &config, bool edge_drive) {
  check_allowed_keys(config, {"n", "init", "outcome", "theta_points",
                              "theta_max", "shots", "noise_p", "seed"});
  int n = parse_n(config, 4, 2, 8);
  int init = parse_ancilla_label(config, "init", "down");
  int outcome = parse_ancilla_label(config, "outcome", "up");
  long shots = parse_shots(config, 0);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  std::vector<double> thetas = parse_theta_grid(config);
  ReportDocument doc = make_document(config);

  QuditRegister state0 = aklt_state_for(config, n, init, outcome, noise_p, rng);
  EdgeAlgebra alg = left_edge_algebra();
  ReportTable table;
  table.name = "trajectory";
  std::vector<double> z_values(thetas.size());
  if (shots == 0) {
    table.columns = {"theta", "x", "y", "z", "energy"};
    std::vector<RabiPoint> traj =
        edge_drive ? edge_rabi_trajectory(state0, thetas, noise_p, &rng)
                   : bulk_rabi_trajectory(state0, thetas);
    for (size_t i = 0; i < traj.size(); i++) {
      const RabiPoint &p = traj[i];
      z_values[i] = p.z;
      table.rows.push_back({num_cell(p.theta), num_cell(p.x), num_cell(p.y),
                            num_cell(p.z), num_cell(p.energy)});
    }
  } else {
    table.columns = {"theta", "x", "y", "z", "z_std_error", "energy"};
    MeasurementSetting z_setting = edge_z_setting(n);
    for (size_t i = 0; i < thetas.size(); i++) {
      QuditRegister state =
          edge_drive
              ? edge_rotated_state(state0, thetas[i], noise_p, &rng)
              : bulk_rotated_state(state0, thetas[i]);
      Philox4x32 sub = rng.substream(0x72616269u, i);
      ShotStats stats = sample_setting(state, z_setting, shots, sub);
      z_values[i] = stats.mean;
      table.rows.push_back({
          num_cell(thetas[i]),
          num_cell(state.expectation(alg.x, {0, 1}).real()),
          num_cell(state.expectation(alg.y, {0, 1}).real()),
          num_cell(stats.mean),
          num_cell(stats.std_error),
          num_cell(aklt_energy(state)),
      });
    }
  }
  doc.tables.push_back(std::move(table));
  double z0 = state0.expectation(alg.z, {0, 1}).real();
  doc.scalars.emplace_back("z_initial", num_cell(z0));
  // The bulk drive precesses the edge spin at half the raw pulse angle, so
  // fit in effective precession units to keep the cosine frequency at one.
  std::vector<double> fit_thetas = thetas;
  if (!edge_drive) {
    for (double &t : fit_thetas) {
      t *= 0.5;
    }
  }
  std::optional<DampedCosineFit> fit =
      add_fit_scalars(doc, fit_thetas, z_values, "fit");
  // Signal measured in units of the initial edge polarization.
  if (fit && std::abs(z0) > 1e-12) {
    doc.scalars.emplace_back("bloch_contrast",
                             num_cell(fit->contrast() / std::abs(z0)));
  }
  return doc;
}

ReportDocument run_local_order(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "init", "outcome", "noise_p", "seed"});
  int n = parse_n(config, 5, 2, 8);
  int init = parse_ancilla_label(config, "init", "up");
  int outcome = parse_ancilla_label(config, "outcome", "up");
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = aklt_state_for(config, n, init, outcome, noise_p, rng);
  std::vector<std::array<double, 3>> profile = local_spin_profile(state);
  ReportTable table;
  table.name = "profile";
  table.columns = {"site", "sx", "sy", "sz"};
  for (size_t j = 0; j < profile.size(); j++) {
    table.rows.push_back({
        int_cell(static_cast<long long>(j) + 1),
        num_cell(profile[j][0]),
        num_cell(profile[j][1]),
        num_cell(profile[j][2]),
    });
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

ReportDocument run_correlations(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "init", "outcome", "noise_p", "seed"});
  int n = parse_n(config, 5, 2, 8);
  int init = parse_ancilla_label(config, "init", "up");
  int outcome = parse_ancilla_label(config, "outcome", "up");
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = aklt_state_for(config, n, init, outcome, noise_p, rng);
  ReportTable table;
  table.name = "pairs";
  table.columns = {"i", "j", "xx", "xy", "xz", "yx", "yy",
                   "yz", "zx", "zy", "zz"};
  for (int j = 1; j < n; j++) {
    Eigen::Matrix3d c = two_spin_correlation(state, 0, j);
    std::vector<ReportCell> row = {int_cell(1), int_cell(j + 1)};
    for (int a = 0; a < 3; a++) {
      for (int b = 0; b < 3; b++) {
        row.push_back(num_cell(c(a, b)));
      }
    }
    table.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

ReportDocument run_string_order(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "init", "outcome", "axis", "form", "shots",
                              "noise_p", "seed"});
  int n = parse_n(config, 5, 2, 8);
  int init = parse_ancilla_label(config, "init", "up");
  int outcome = parse_ancilla_label(config, "outcome", "up");
  std::string axis_str = config.get_string("axis", "z");
  if (axis_str.size() != 1 ||
      (axis_str != "x" && axis_str != "y" && axis_str != "z")) {
    throw ConfigError("config key 'axis': expected 'x', 'y' or 'z'");
  }
  char axis = axis_str[0];
  std::string form_str = config.get_string("form", "sum");
  StringForm form;
  if (form_str == "sum") {
    form = StringForm::sum_exponent;
  } else if (form_str == "product") {
    form = StringForm::product_exponent;
  } else {
    throw ConfigError("config key 'form': expected 'sum' or 'product'");
  }
  long shots = parse_shots(config, 0);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = aklt_state_for(config, n, init, outcome, noise_p, rng);
  doc.scalars.emplace_back("value_exact",
                           num_cell(string_order_exact(state, axis, form)));
  if (shots > 0) {
    Philox4x32 sub = rng.substream(0x73747269u, 0);
    ShotStats stats = string_order_sampled(state, axis, form, shots, sub);
    doc.scalars.emplace_back("sampled_mean", num_cell(stats.mean));
    doc.scalars.emplace_back("sampled_std_error", num_cell(stats.std_error));
    doc.scalars.emplace_back("shots", int_cell(stats.shots));
  }
  return doc;
}

ReportDocument run_cluster_verify(const ExperimentConfig &config) {
  check_allowed_keys(config,
                     {"n", "method", "samples", "shots", "noise_p", "seed"});
  int n = parse_n(config, 6, 2, 10);
  ClusterMethod method = parse_cluster_method(config);
  long samples = config.get_int("samples", 0);
  if (samples < 0) {
    throw ConfigError("config key 'samples': must be >= 0");
  }
  long shots = parse_shots(config, 0);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = cluster_state(n, method, noise_p, &rng);
  if (samples == 0) {
    doc.scalars.emplace_back(
        "group_mean", num_cell(stabilizer_group_mean_exhaustive(state)));
  } else {
    Philox4x32 sub = rng.substream(0x67726f75u, 0);
    ShotStats stats = stabilizer_group_mean_sampled(state, samples, sub);
    doc.scalars.emplace_back("group_mean", num_cell(stats.mean));
    doc.scalars.emplace_back("group_mean_std_error",
                             num_cell(stats.std_error));
  }
  doc.scalars.emplace_back("energy", num_cell(cluster_energy(state)));
  ReportTable table;
  table.name = "generators";
  table.columns = {"name", "expectation"};
  if (shots > 0) {
    table.columns.push_back("sampled_mean");
    table.columns.push_back("std_error");
  }
  std::vector<PauliString> gens = cluster_stabilizer_generators(n);
  for (size_t k = 0; k < gens.size(); k++) {
    std::vector<ReportCell> row = {
        text_cell("K" + std::to_string(k + 1)),
        num_cell(pauli_expectation(state, gens[k])),
    };
    if (shots > 0) {
      Philox4x32 sub = rng.substream(0x67656e73u, k);
      ShotStats stats =
          sample_setting(state, pauli_setting(gens[k]), shots, sub);
      row.push_back(num_cell(stats.mean));
      row.push_back(num_cell(stats.std_error));
    }
    table.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

ReportDocument run_cluster_bulkedge(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "method", "noise_p", "seed"});
  int n = parse_n(config, 6, 6, 6);
  ClusterMethod method = parse_cluster_method(config);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = cluster_state(n, method, noise_p, &rng);
  ReportTable table;
  table.name = "correspondence";
  table.columns = {"label", "bulk_mean", "left_edge", "right_edge"};
  for (const ClusterTableRow &row : bulk_edge_correspondence(state)) {
    table.rows.push_back({
        text_cell(row.label),
        num_cell(row.bulk_mean),
        num_cell(row.left_edge),
        num_cell(row.right_edge),
    });
  }
  doc.tables.push_back(std::move(table));
  return doc;
}

ReportDocument run_cluster_bell(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "method", "shots", "noise_p", "seed"});
  int n = parse_n(config, 6, 6, 6);
  ClusterMethod method = parse_cluster_method(config);
  long shots = parse_shots(config, 0);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = cluster_state(n, method, noise_p, &rng);
  auto outcome_string = [](const std::vector<int> &outcomes) {
    std::string s;
    for (int o : outcomes) {
      s += o > 0 ? '+' : '-';
    }
    return s;
  };
  if (shots == 0) {
    std::vector<BellBranch> branches = bell_projection_branches(state);
    ReportTable table;
    table.name = "branches";
    table.columns = {"outcomes", "probability", "a", "b",
                     "x0z5",     "z0x5",        "y0y5", "fidelity"};
    double mean_fidelity = 0.0;
    double min_fidelity = 1.0;
    for (const BellBranch &b : branches) {
      mean_fidelity += b.probability * b.fidelity;
      min_fidelity = std::min(min_fidelity, b.fidelity);
      table.rows.push_back({
          text_cell(outcome_string(b.outcomes)),
          num_cell(b.probability),
          int_cell(b.a),
          int_cell(b.b),
          num_cell(b.x0zn),
          num_cell(b.z0xn),
          num_cell(b.y0yn),
          num_cell(b.fidelity),
      });
    }
    doc.tables.push_back(std::move(table));
    doc.scalars.emplace_back("mean_fidelity", num_cell(mean_fidelity));
    doc.scalars.emplace_back("min_fidelity", num_cell(min_fidelity));
  } else {
    // Aggregate sampled trajectories by (a, b) label.
    std::map<std::pair<int, int>, std::pair<long, double>> agg;
    Philox4x32 sub = rng.substream(0x62656c6cu, 0);
    double mean_fidelity = 0.0;
    for (long s = 0; s < shots; s++) {
      BellBranch b = bell_projection_sample(state, sub);
      auto &slot = agg[{b.a, b.b}];
      slot.first++;
      slot.second += b.fidelity;
      mean_fidelity += b.fidelity;
    }
    ReportTable table;
    table.name = "labels";
    table.columns = {"a", "b", "count", "mean_fidelity"};
    for (const auto &[label, slot] : agg) {
      table.rows.push_back({
          int_cell(label.first),
          int_cell(label.second),
          int_cell(slot.first),
          num_cell(slot.second / static_cast<double>(slot.first)),
      });
    }
    doc.tables.push_back(std::move(table));
    doc.scalars.emplace_back(
        "mean_fidelity", num_cell(mean_fidelity / static_cast<double>(shots)));
  }
  return doc;
}

ReportDocument run_cluster_rabi(const ExperimentConfig &config) {
  check_allowed_keys(
      config, {"n", "method", "theta_points", "theta_max", "noise_p", "seed"});
  int n = parse_n(config, 6, 6, 6);
  ClusterMethod method = parse_cluster_method(config);
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  std::vector<double> thetas = parse_theta_grid(config);
  ReportDocument doc = make_document(config);

  QuditRegister state = cluster_state(n, method, noise_p, &rng);
  std::vector<RabiPoint> traj =
      cluster_rabi_trajectory(state, thetas, noise_p, &rng);
  ReportTable table;
  table.name = "trajectory";
  table.columns = {"theta", "p1", "p2", "p3", "energy"};
  std::vector<double> p3(traj.size());
  for (size_t i = 0; i < traj.size(); i++) {
    const RabiPoint &p = traj[i];
    p3[i] = p.z;
    table.rows.push_back({num_cell(p.theta), num_cell(p.x), num_cell(p.y),
                          num_cell(p.z), num_cell(p.energy)});
  }
  doc.tables.push_back(std::move(table));
  add_fit_scalars(doc, thetas, p3, "fit");
  return doc;
}

ReportDocument run_tomography(const ExperimentConfig &config) {
  check_allowed_keys(config, {"n", "init", "outcome", "shots", "method",
                              "max_iter", "tol", "noise_p", "seed"});
  int n = parse_n(config, 2, 1, 3);
  int init = parse_ancilla_label(config, "init", "up");
  int outcome = parse_ancilla_label(config, "outcome", "up");
  long shots = parse_shots(config, 0);
  std::string method = config.get_string("method", "linear");
  if (method != "linear" && method != "mle" && method != "both") {
    throw ConfigError("config key 'method': expected 'linear', 'mle' or 'both'");
  }
  long max_iter = config.get_int("max_iter", 20000);
  double tol = config.get_double("tol", 1e-10);
  if (max_iter < 1 || tol <= 0.0) {
    throw ConfigError("config keys 'max_iter'/'tol': invalid values");
  }
  double noise_p = parse_noise(config);
  Philox4x32 rng(parse_seed(config));
  ReportDocument doc = make_document(config);

  QuditRegister state = aklt_state_for(config, n, init, outcome, noise_p, rng);
  Eigen::MatrixXd freqs =
      shots == 0 ? tomography_exact_frequencies(state)
                 : tomography_sampled_frequencies(state, shots, rng);
  Eigen::MatrixXcd truth = density_of(state);
  auto report_method = [&](const std::string &name,
                           const Eigen::MatrixXcd &rho) {
    doc.scalars.emplace_back(name + "_trace_distance",
                             num_cell(trace_distance(rho, truth)));
    doc.scalars.emplace_back(name + "_fidelity",
                             num_cell(fidelity_with_state(rho, state)));
    if (n <= 2) {
      ReportTable table;
      table.name = "rho_" + name;
      table.columns = {"row"};
      for (Eigen::Index c = 0; c < rho.cols(); c++) {
        table.columns.push_back("re" + std::to_string(c));
        table.columns.push_back("im" + std::to_string(c));
      }
      for (Eigen::Index r = 0; r < rho.rows(); r++) {
        std::vector<ReportCell> row = {int_cell(r)};
        for (Eigen::Index c = 0; c < rho.cols(); c++) {
          row.push_back(num_cell(rho(r, c).real()));
          row.push_back(num_cell(rho(r, c).imag()));
        }
        table.rows.push_back(std::move(row));
      }
      doc.tables.push_back(std::move(table));
    }
  };
  if (method == "linear" || method == "both") {
    Eigen::MatrixXcd rho = tomography_linear(freqs, n);
    report_method("linear", rho);
    doc.scalars.emplace_back(
        "linear_projected_trace_distance",
        num_cell(trace_distance(project_to_density_matrix(rho), truth)));
  }
  if (method == "mle" || method == "both") {
    Eigen::MatrixXcd rho =
        tomography_mle(freqs, n, static_cast<int>(max_iter), tol);
    report_method("mle", rho);
  }
  return doc;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"aklt-prepare",   "aklt-energy",      "rabi-edge",
          "rabi-bulk",      "local-order",      "correlations",
          "string-order",   "cluster-verify",   "cluster-bulkedge",
          "cluster-bell",   "cluster-rabi",     "tomography"};
}

ReportDocument run_experiment(const ExperimentConfig &config) {
  std::string name = config.require_string("experiment");
  if (name == "aklt-prepare") {
    return run_aklt_prepare(config);
  }
  if (name == "aklt-energy") {
    return run_aklt_energy(config);
  }
  if (name == "rabi-edge") {
    return run_rabi(config, true);
  }
  if (name == "rabi-bulk") {
    return run_rabi(config, false);
  }
  if (name == "local-order") {
    return run_local_order(config);
  }
  if (name == "correlations") {
    return run_correlations(config);
  }
  if (name == "string-order") {
    return run_string_order(config);
  }
  if (name == "cluster-verify") {
    return run_cluster_verify(config);
  }
  if (name == "cluster-bulkedge") {
    return run_cluster_bulkedge(config);
  }
  if (name == "cluster-bell") {
    return run_cluster_bell(config);
  }
  if (name == "cluster-rabi") {
    return run_cluster_rabi(config);
  }
  if (name == "tomography") {
    return run_tomography(config);
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace quditlab
