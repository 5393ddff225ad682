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

#ifndef QCOH_RUNNER_HPP
#define QCOH_RUNNER_HPP

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace qcoh {

// CLI exit codes: schema violation 2, numerical failure 3, I/O failure 4.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Validates the config (versioned schema, unknown keys rejected, mandatory
/// seed), runs the requested mode, and writes results plus manifest.json and
/// summary.txt into out_dir. Returns the human-readable summary. Outputs are
/// deterministic functions of the config.
std::string run_experiment(nlohmann::json config, const std::string& out_dir);

/// Table-I-shaped report: for each (epsilon, epsilon_in) pair with
/// uncertainties, the coherent error epsilon - epsilon_in (error bars added
/// linearly) and the optimal-WEPG interval from the diamond bounds with the
/// epsilon_in uncertainty propagated linearly.
struct Table1Row {
  std::string label;
  double epsilon = 0, sigma_epsilon = 0;
  double epsilon_in = 0, sigma_epsilon_in = 0;
  double epsilon_coh = 0, sigma_epsilon_coh = 0;
  double diamond_mid = 0, diamond_half = 0;
};

Table1Row table1_row(const std::string& label, double epsilon, double sigma_epsilon,
                     double epsilon_in, double sigma_epsilon_in);

uint64_t config_hash(const nlohmann::json& config);

}  // namespace qcoh

#endif
