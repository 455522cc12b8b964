// Copyright 2026 The qwit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwit/witnesses.hpp"

namespace qwit {

inline constexpr const char* kVersion = "0.1.0";

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> points() const;
};

struct SolverSpec {
  std::string method = "adaptive";  // "adaptive" | "fixed-rk4"
  double dt = 0.0;                  // fixed-step size (also HEOM step)
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
};

struct TimeSetSpec {
  int k_count = 2;
  std::vector<double> j_offsets{0.0, 1.0};        // start times (k + offset_j) * t0
  std::string second_set = "trajectory";          // "trajectory" | "stationary-collapse"
};

/// A physical quantity carrying its unit string, as stored in scenario files.
struct Quantity {
  double value = 0.0;
  std::string unit;
};

struct ModelSpec {
  std::string kind;  // cooper_pair_box | transmon | dqd | jc | photonic | fmo | rate-matrix
  std::map<std::string, Quantity> quantities;
  std::map<std::string, double> numbers;   // dimensionless parameters
  std::vector<double> matrix;              // rate-matrix entries, row-major
  std::string data_path;                   // fmo: Hamiltonian data file
};

struct OutputSpec {
  std::string directory = ".";
  std::string csv = "";       // default: <name>.csv
  std::string metadata = "";  // default: <name>.meta.json
  bool svg = false;
};

struct Scenario {
  std::string name;
  ModelSpec model;
  std::string witness;  // wq | wq-partial | womega | wqq
  int m = 1;            // 1-based state indices, matching the preset labels
  int n = 1;
  int initial_state = 1;
  GridSpec t0_grid;
  GridSpec tau_grid;
  TimeSetSpec time_set;
  SolverSpec solver;
  double threshold = kDefaultWitnessThreshold;
  OutputSpec output;

  static Scenario from_json_string(const std::string& text);
  static Scenario from_file(const std::string& path);
  std::string to_json_string() const;

  /// All schema violations at once; empty means valid.
  std::vector<std::string> diagnostics() const;
};

struct ResultRow {
  double t0 = 0.0;
  double tau = 0.0;
  WitnessResult witness;
};

struct ResultTable {
  std::vector<std::string> component_names;  // column order after the fixed four
  std::vector<ResultRow> rows;
  std::map<std::string, std::string> metadata;

  std::string to_csv() const;
  /// Array of witness records {witness, m, n, t0, tau, value, detected,
  /// components, threshold}.
  std::string to_json_records(const std::string& witness, int m, int n) const;
};

/// Error category for the CLI exit codes.
enum class RunStatus { kOk = 0, kScenarioError = 1, kSolverFailure = 2 };

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes the scenario on its grid. Throws ScenarioError for configuration
/// problems and propagates solver failures (OdeFailure, HeomDivergence).
ResultTable run_scenario(const Scenario& scenario);

/// Writes CSV + metadata sidecar (+ optional SVG) into the output directory;
/// returns the CSV path.
std::string write_outputs(const Scenario& scenario, const ResultTable& table);

struct PresetInfo {
  std::string name;
  std::string description;
};

/// The shipped presets in stable order.
std::vector<PresetInfo> list_presets();
bool is_preset(const std::string& name);
Scenario preset_scenario(const std::string& name);

}  // namespace qwit
