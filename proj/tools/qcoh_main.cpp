// Copyright 2026 The qcoh authors.
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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "qcoh/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qcoh: coherent vs incoherent qubit-control error analysis"};

  std::string config_path;
  std::string out_dir = ".";
  int64_t seed_override = -1;
  int threads = 1;
  bool quiet = false;

  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--seed", seed_override, "override the config seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads for simulations");
  app.add_flag("--quiet", quiet, "suppress the summary on stdout");
  CLI11_PARSE(app, argc, argv);

  nlohmann::json config;
  {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 4;
    }
    try {
      in >> config;
    } catch (const std::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
      return 2;
    }
  }
  if (seed_override >= 0) config["seed"] = static_cast<uint64_t>(seed_override);
  if (threads > 1) config["threads"] = threads;

  try {
    const std::string summary = qcoh::run_experiment(config, out_dir);
    if (!quiet) std::cout << summary;
    return 0;
  } catch (const qcoh::SchemaError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qcoh::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const qcoh::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
