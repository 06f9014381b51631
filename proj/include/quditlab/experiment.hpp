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

#ifndef QUDITLAB_EXPERIMENT_HPP
#define QUDITLAB_EXPERIMENT_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quditlab/report.hpp"

namespace quditlab {

/// Raised for malformed configs, unknown experiments/keys, or bad values
/// (usage errors; the CLI maps these to exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

/// Flat key=value experiment description. Lines hold `key = value`; blank
/// lines and `#` comments are ignored. Keys must be unique. The canonical
/// form (`emit`) lists keys sorted, and `parse(emit(c))` reproduces `c`.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string &text);
  static ExperimentConfig load_file(const std::string &path);

  void set(const std::string &key, const std::string &value);

  bool has(const std::string &key) const;
  std::string get_string(const std::string &key,
                         const std::string &fallback) const;
  std::string require_string(const std::string &key) const;
  long get_int(const std::string &key, long fallback) const;
  double get_double(const std::string &key, double fallback) const;

  /// Canonical serialization: keys sorted, "key = value" lines.
  std::string emit() const;
  uint64_t hash() const;  // FNV-1a of emit()

  /// All keys present in the config.
  std::vector<std::string> keys() const;

  bool operator==(const ExperimentConfig &other) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  const std::string *find(const std::string &key) const;
};

/// Runs the experiment described by the config and returns the report
/// document. Throws ConfigError for unknown experiments/keys/values.
ReportDocument run_experiment(const ExperimentConfig &config);

/// Names of all available experiments.
std::vector<std::string> experiment_names();

}  // namespace quditlab

#endif
