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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qwit/heom.hpp"
#include "qwit/ode.hpp"
#include "qwit/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qwit - time-domain quantum-coherence witnesses"};
  app.require_subcommand(1);

  std::string run_path, out_dir;
  bool run_svg = false;
  auto* run_cmd = app.add_subcommand("run", "run a scenario file or preset and write results");
  run_cmd->add_option("scenario", run_path, "scenario JSON file or preset name")->required();
  run_cmd->add_option("--out", out_dir, "output directory (overrides the scenario)");
  run_cmd->add_flag("--svg", run_svg, "also render an SVG plot");

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "check a scenario file and report every problem");
  validate_cmd->add_option("scenario", validate_path, "scenario JSON file or preset name")
      ->required();

  auto* list_cmd = app.add_subcommand("list-presets", "list the shipped example presets");
  auto* version_cmd = app.add_subcommand("version", "print the version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      qwit::Scenario scenario = qwit::Scenario::from_file(run_path);
      if (!out_dir.empty()) scenario.output.directory = out_dir;
      if (run_svg) scenario.output.svg = true;
      const qwit::ResultTable table = qwit::run_scenario(scenario);
      const std::string csv = qwit::write_outputs(scenario, table);
      int detected = 0;
      for (const auto& row : table.rows) detected += row.witness.detected ? 1 : 0;
      std::cout << scenario.name << ": " << table.rows.size() << " grid points, " << detected
                << " detected; wrote " << csv << "\n";
      return 0;
    }
    if (validate_cmd->parsed()) {
      const qwit::Scenario scenario = qwit::Scenario::from_file(validate_path);
      const auto problems = scenario.diagnostics();
      if (problems.empty()) {
        std::cout << "ok: " << scenario.name << "\n";
        return 0;
      }
      for (const auto& problem : problems) std::cout << problem << "\n";
      return 1;
    }
    if (list_cmd->parsed()) {
      for (const auto& preset : qwit::list_presets()) {
        std::cout << preset.name << "\t" << preset.description << "\n";
      }
      return 0;
    }
    if (version_cmd->parsed()) {
      std::cout << "qwit " << qwit::kVersion << "\n";
      return 0;
    }
  } catch (const qwit::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 1;
  } catch (const qwit::OdeFailure& e) {
    std::cerr << "solver failure: " << e.what() << " (reached t = " << e.time_reached << ")\n";
    return 2;
  } catch (const qwit::HeomDivergence& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
