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
// Declarative experiment runner. Reads a key=value config file, runs the
// described experiment, prints the report to stdout, and writes it to
// <outdir>/<experiment>-<confighash>.<txt|json>.
//
// Exit codes: 0 success, 1 internal/runtime failure, 2 usage or config error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quditlab/experiment.hpp"
#include "quditlab/kernels.hpp"
#include "quditlab/report.hpp"

namespace {

int run(const std::string &config_path, const std::string &out_dir,
        const std::string &format_name, int threads) {
  using namespace quditlab;
  if (threads > 0) {
    set_num_threads(threads);
  }
  ReportFormat format;
  if (format_name == "table") {
    format = ReportFormat::table;
  } else if (format_name == "doc") {
    format = ReportFormat::doc;
  } else {
    throw ConfigError("--format: expected 'table' or 'doc'");
  }

  ExperimentConfig config = ExperimentConfig::load_file(config_path);
  ReportDocument doc = run_experiment(config);
  std::string rendered = render_report(doc, format);

  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  std::string extension = format == ReportFormat::doc ? ".json" : ".txt";
  std::filesystem::path out_path =
      dir / (doc.experiment + "-" + doc.config_hash + extension);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + out_path.string());
  }
  out << rendered;
  out.close();
  if (!out) {
    throw std::runtime_error("failed writing output file: " +
                             out_path.string());
  }

  std::cout << rendered;
  std::cerr << "wrote " << out_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"quditlab experiment runner"};
  app.name("run");

  std::string config_path;
  std::string out_dir;
  std::string format_name = "table";
  int threads = 0;
  bool list = false;

  const char *env_out = std::getenv("QUDITLAB_OUT");
  out_dir = env_out != nullptr ? env_out : ".";

  app.add_option("config", config_path, "Experiment config file (key = value)");
  app.add_option("--out", out_dir,
                 "Output directory (default: $QUDITLAB_OUT or '.')");
  app.add_option("--format", format_name, "Report format: table or doc")
      ->check(CLI::IsMember({"table", "doc"}));
  app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
  app.add_flag("--list", list, "List available experiments and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list) {
    for (const std::string &name : quditlab::experiment_names()) {
      std::cout << name << "\n";
    }
    return 0;
  }
  if (config_path.empty()) {
    std::cerr << "error: missing config file argument (see --help)\n";
    return 2;
  }

  try {
    return run(config_path, out_dir, format_name, threads);
  } catch (const quditlab::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
