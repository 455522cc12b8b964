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

#include "qwit/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qwit/classical.hpp"
#include "qwit/constants.hpp"
#include "qwit/heom.hpp"
#include "qwit/models.hpp"
#include "qwit/svg.hpp"

namespace qwit {

using nlohmann::json;

std::vector<double> GridSpec::points() const {
  std::vector<double> out;
  if (count <= 0) return out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(start);
    return out;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out.push_back(start + step * i);
  return out;
}

namespace {

const std::set<std::string> kModelKinds = {"cooper_pair_box", "transmon", "dqd", "jc",
                                           "photonic",        "fmo",      "rate-matrix"};
const std::set<std::string> kWitnessKinds = {"wq", "wq-partial", "womega", "wqq"};

Quantity quantity_from_json(const json& j) {
  Quantity q;
  q.value = j.at("value").get<double>();
  q.unit = j.at("unit").get<std::string>();
  return q;
}

json quantity_to_json(const Quantity& q) { return json{{"value", q.value}, {"unit", q.unit}}; }

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  g.start = j.at("start").get<double>();
  g.stop = j.at("stop").get<double>();
  g.count = j.at("count").get<int>();
  return g;
}

json grid_to_json(const GridSpec& g) {
  return json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Scenario Scenario::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario parse error: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    const json& jm = j.at("model");
    s.model.kind = jm.at("kind").get<std::string>();
    for (const auto& [key, value] : jm.items()) {
      if (key == "kind") continue;
      if (key == "data_path") {
        s.model.data_path = value.get<std::string>();
      } else if (value.is_object()) {
        s.model.quantities[key] = quantity_from_json(value);
      } else if (value.is_array()) {
        s.model.matrix = value.get<std::vector<double>>();
      } else {
        s.model.numbers[key] = value.get<double>();
      }
    }
    s.witness = j.at("witness").get<std::string>();
    s.m = j.value("m", 1);
    s.n = j.value("n", 1);
    s.initial_state = j.value("initial_state", 1);
    if (j.contains("t0_grid")) s.t0_grid = grid_from_json(j.at("t0_grid"));
    if (j.contains("tau_grid")) s.tau_grid = grid_from_json(j.at("tau_grid"));
    if (j.contains("time_domain_set")) {
      const json& ts = j.at("time_domain_set");
      s.time_set.k_count = ts.value("k_count", 2);
      if (ts.contains("j_offsets")) {
        s.time_set.j_offsets = ts.at("j_offsets").get<std::vector<double>>();
      }
      s.time_set.second_set = ts.value("second_set", "trajectory");
    }
    if (j.contains("solver")) {
      const json& sv = j.at("solver");
      s.solver.method = sv.value("method", "adaptive");
      s.solver.dt = sv.value("dt", 0.0);
      s.solver.rel_tol = sv.value("rel_tol", 1e-9);
      s.solver.abs_tol = sv.value("abs_tol", 1e-12);
    }
    s.threshold = j.value("threshold", kDefaultWitnessThreshold);
    if (j.contains("output")) {
      const json& out = j.at("output");
      s.output.directory = out.value("directory", ".");
      s.output.csv = out.value("csv", "");
      s.output.metadata = out.value("metadata", "");
      s.output.svg = out.value("svg", false);
    }
    return s;
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario field error: ") + e.what());
  }
}

Scenario Scenario::from_file(const std::string& path) {
  if (is_preset(path)) return preset_scenario(path);
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_string(buffer.str());
}

std::string Scenario::to_json_string() const {
  json jm;
  jm["kind"] = model.kind;
  for (const auto& [key, q] : model.quantities) jm[key] = quantity_to_json(q);
  for (const auto& [key, v] : model.numbers) jm[key] = v;
  if (!model.matrix.empty()) jm["entries"] = model.matrix;
  if (!model.data_path.empty()) jm["data_path"] = model.data_path;

  json j{{"name", name},
         {"model", jm},
         {"witness", witness},
         {"m", m},
         {"n", n},
         {"initial_state", initial_state},
         {"t0_grid", grid_to_json(t0_grid)},
         {"tau_grid", grid_to_json(tau_grid)},
         {"time_domain_set",
          json{{"k_count", time_set.k_count},
               {"j_offsets", time_set.j_offsets},
               {"second_set", time_set.second_set}}},
         {"solver",
          json{{"method", solver.method},
               {"dt", solver.dt},
               {"rel_tol", solver.rel_tol},
               {"abs_tol", solver.abs_tol}}},
         {"threshold", threshold},
         {"output",
          json{{"directory", output.directory},
               {"csv", output.csv},
               {"metadata", output.metadata},
               {"svg", output.svg}}}};
  return j.dump(2);
}

namespace {

int model_dimension(const ModelSpec& model) {
  if (model.kind == "cooper_pair_box" || model.kind == "transmon" || model.kind == "photonic") {
    return 2;
  }
  if (model.kind == "dqd" || model.kind == "jc") return 3;
  if (model.kind == "fmo") return 7;
  if (model.kind == "rate-matrix") {
    const double d = std::sqrt(static_cast<double>(model.matrix.size()));
    return static_cast<int>(std::lround(d));
  }
  return 0;
}

}  // namespace

std::vector<std::string> Scenario::diagnostics() const {
  std::vector<std::string> problems;
  if (name.empty()) problems.push_back("name: must be nonempty");
  if (!kModelKinds.count(model.kind)) {
    problems.push_back("model.kind: unknown kind '" + model.kind + "'");
  }
  if (!kWitnessKinds.count(witness)) {
    problems.push_back("witness: unknown witness '" + witness + "'");
  }
  const bool angle_domain = model.kind == "photonic";
  const bool pointwise = model.kind == "transmon";
  if (!pointwise) {
    for (const auto& [label, grid] :
         {std::pair<const char*, const GridSpec&>{"t0_grid", t0_grid},
          std::pair<const char*, const GridSpec&>{"tau_grid", tau_grid}}) {
      if (grid.count <= 0) {
        problems.push_back(std::string(label) + ": grid must be nonempty");
      } else if (grid.count > 1 && grid.stop <= grid.start) {
        problems.push_back(std::string(label) + ": grid must be increasing");
      }
      if (grid.start < 0 && !angle_domain) {
        problems.push_back(std::string(label) + ": negative times");
      }
    }
  }
  const int d = model_dimension(model);
  if (d > 0) {
    if (m < 1 || m > d) {
      problems.push_back("m: index " + std::to_string(m) + " out of range for d = " +
                         std::to_string(d));
    }
    if (witness == "womega" && (n < 1 || n > d)) {
      problems.push_back("n: index " + std::to_string(n) + " out of range for d = " +
                         std::to_string(d));
    }
    if (initial_state < 1 || initial_state > d) {
      problems.push_back("initial_state: out of range for d = " + std::to_string(d));
    }
  }
  if (model.kind == "fmo" && witness == "womega") {
    problems.push_back(
        "witness: the propagator-comparison witness assumes Markovian dynamics and is not "
        "valid for the fmo model");
  }
  if (model.kind == "rate-matrix") {
    const std::size_t n_entries = model.matrix.size();
    const int dim = model_dimension(model);
    if (dim < 2 || static_cast<std::size_t>(dim) * dim != n_entries) {
      problems.push_back("model.entries: rate matrix must be square with d >= 2");
    }
  }
  if (witness == "womega") {
    if (time_set.k_count != d && d > 0) {
      problems.push_back("time_domain_set.k_count: must equal the state-space dimension " +
                         std::to_string(d));
    }
    if (time_set.j_offsets.size() != 2) {
      problems.push_back("time_domain_set.j_offsets: exactly two sets are compared");
    }
    if (time_set.second_set != "trajectory" && time_set.second_set != "stationary-collapse") {
      problems.push_back("time_domain_set.second_set: unknown mode '" + time_set.second_set +
                         "'");
    }
  }
  if (solver.method != "adaptive" && solver.method != "fixed-rk4") {
    problems.push_back("solver.method: must be 'adaptive' or 'fixed-rk4'");
  }
  if (solver.method == "fixed-rk4" && solver.dt <= 0) {
    problems.push_back("solver.dt: fixed-step mode needs dt > 0");
  }
  if (threshold <= 0) problems.push_back("threshold: must be positive");
  return problems;
}

// ---------------------------------------------------------------------------

namespace {

double require_quantity(const ModelSpec& model, const std::string& key,
                        const std::string& expected_unit) {
  const auto it = model.quantities.find(key);
  if (it == model.quantities.end()) {
    throw ScenarioError("model." + key + ": missing quantity");
  }
  if (it->second.unit != expected_unit) {
    throw ScenarioError("model." + key + ": expected unit '" + expected_unit + "', got '" +
                        it->second.unit + "'");
  }
  return it->second.value;
}

double number_or(const ModelSpec& model, const std::string& key, double fallback) {
  const auto it = model.numbers.find(key);
  return it == model.numbers.end() ? fallback : it->second;
}

LindbladModel build_lindblad(const ModelSpec& model) {
  if (model.kind == "cooper_pair_box") {
    const double ej = require_quantity(model, "E_J", "ueV");
    const double ec = model.quantities.count("E_C") ? require_quantity(model, "E_C", "ueV") : 0.0;
    return cooper_pair_box(ej, ec, number_or(model, "n_g", 0.5));
  }
  if (model.kind == "dqd") {
    return double_quantum_dot(number_or(model, "Delta", 1.0), number_or(model, "Gamma_L", 4.0),
                              number_or(model, "Gamma_R", 0.1));
  }
  if (model.kind == "jc") {
    return jc_cavity(require_quantity(model, "omega_R_over_2pi", "kHz"),
                     require_quantity(model, "omega_0", "GHz"), number_or(model, "Q", 7e7));
  }
  if (model.kind == "rate-matrix") {
    const int d = model_dimension(model);
    RealMatrix k(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) k(r, c) = model.matrix[r * d + c];
    }
    const RateMatrix rates(std::move(k));
    // Embedded as a Lindblad model with jump operators |m><n| at rate K_mn;
    // populations of diagonal states follow the rate equation exactly.
    HilbertSpace space(d);
    std::vector<CollapseTerm> collapse;
    for (int to = 0; to < d; ++to) {
      for (int from = 0; from < d; ++from) {
        if (to == from || rates.k(to, from) == 0.0) continue;
        ComplexMatrix jump = ComplexMatrix::Zero(d, d);
        jump(to, from) = 1.0;
        collapse.push_back({std::move(jump), rates.k(to, from)});
      }
    }
    return LindbladModel(std::move(space), ComplexMatrix::Zero(d, d), std::move(collapse));
  }
  throw ScenarioError("model.kind: '" + model.kind + "' is not a Lindblad model");
}

EvolveOptions evolve_options(const SolverSpec& solver) {
  EvolveOptions opts;
  opts.method = solver.method == "fixed-rk4" ? OdeMethod::kFixedRk4 : OdeMethod::kAdaptiveRk45;
  opts.rel_tol = solver.rel_tol;
  opts.abs_tol = solver.abs_tol;
  opts.fixed_dt = solver.dt;
  return opts;
}

void push_row(ResultTable& table, double t0, double tau, WitnessResult witness) {
  ResultRow row;
  row.t0 = t0;
  row.tau = tau;
  row.witness = std::move(witness);
  table.rows.push_back(std::move(row));
}

ResultTable run_photonic(const Scenario& scenario) {
  ResultTable table;
  table.component_names = {"analytic", "expectation", "classical_sum"};
  for (const double phi : scenario.t0_grid.points()) {
    for (const double theta : scenario.tau_grid.points()) {
      PhotonicWitness w = photonic_witness(phi, theta, scenario.threshold);
      w.numeric.components.insert(w.numeric.components.begin(), {"analytic", w.analytic});
      push_row(table, phi, theta, std::move(w.numeric));
    }
  }
  table.metadata["columns"] = "t0 column holds phi [rad], tau column holds theta [rad]";
  return table;
}

ResultTable run_transmon(const Scenario& scenario) {
  const double fidelity = number_or(scenario.model, "process_fidelity", 0.94);
  const ProcessMap gate =
      fidelity >= 1.0 ? hadamard_process()
                      : degraded_hadamard(depolarizing_strength_for_fidelity(fidelity));
  ResultTable table;
  table.component_names = {"expectation", "classical_sum", "process_fidelity"};
  WitnessResult w = transmon_hadamard_witness(gate, scenario.threshold);
  w.components.push_back({"process_fidelity", process_fidelity(gate, hadamard_process().kraus[0])});
  push_row(table, 0.0, 0.0, std::move(w));
  table.metadata["columns"] = "single-point witness; grids unused for the transmon process";
  return table;
}

ResultTable run_lindblad_wq(const Scenario& scenario, const LindbladModel& model) {
  const EvolveOptions opts = evolve_options(scenario.solver);
  const int m = scenario.m - 1;
  const DensityMatrix rho0 = DensityMatrix::basis_state(model.space, scenario.initial_state - 1);
  const bool partial = scenario.witness == "wq-partial";

  const auto taus = scenario.tau_grid.points();
  std::vector<Propagator> props;
  props.reserve(taus.size());
  for (const double tau : taus) props.push_back(propagator_markov(model, tau, opts));

  ResultTable table;
  table.component_names = {"expectation", "classical_sum"};
  if (partial) {
    table.component_names.push_back("running_sum");
    table.component_names.push_back("terms_consumed");
  }
  for (const double t0 : scenario.t0_grid.points()) {
    const DensityMatrix at_t0 = evolve(model, rho0, t0, opts);
    const RealVector p = populations(at_t0);
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      const double expectation = population(evolve(model, at_t0, taus[ti], opts), m);
      RealVector omega_row = props[ti].omega.row(m).transpose();
      WitnessResult w = witness_wq(expectation, p, omega_row, scenario.threshold);
      if (partial) {
        std::vector<double> terms(model.dim());
        for (int n = 0; n < model.dim(); ++n) terms[n] = p[n] * omega_row[n];
        const PartialWitnessResult pw =
            witness_wq_partial(expectation, terms, scenario.threshold);
        w.detected = pw.detected || w.detected;
        w.components.push_back({"running_sum", pw.running_sum});
        w.components.push_back({"terms_consumed", static_cast<double>(pw.terms_consumed)});
      }
      push_row(table, t0, taus[ti], std::move(w));
    }
  }
  return table;
}

ResultTable run_lindblad_wqq(const Scenario& scenario, const LindbladModel& model) {
  const EvolveOptions opts = evolve_options(scenario.solver);
  const int m = scenario.m - 1, n = scenario.n - 1;
  const DensityMatrix rho0 = DensityMatrix::basis_state(model.space, scenario.initial_state - 1);

  ResultTable table;
  table.component_names = {"correlator_re", "correlator_im", "classical"};
  for (const double t0 : scenario.t0_grid.points()) {
    const DensityMatrix at_t0 = evolve(model, rho0, t0, opts);
    const double p_n = population(at_t0, n);
    for (const double tau : scenario.tau_grid.points()) {
      const Complex corr = two_time_correlator(model, rho0, m, n, t0, t0 + tau, opts);
      const Propagator prop = propagator_markov(model, tau, opts);
      push_row(table, t0, tau, witness_wqq(corr, p_n, prop(m, n), scenario.threshold));
    }
  }
  table.metadata["note"] =
      "W_QQ is diagnostic only: not directly measurable, the first projective measurement "
      "destroys the coherence it would witness";
  return table;
}

ResultTable run_lindblad_womega(const Scenario& scenario, const LindbladModel& model) {
  const EvolveOptions opts = evolve_options(scenario.solver);
  const int m = scenario.m - 1, n = scenario.n - 1;
  const DensityMatrix rho0 = DensityMatrix::basis_state(model.space, scenario.initial_state - 1);
  const bool stationary_second = scenario.time_set.second_set == "stationary-collapse";

  ResultTable table;
  table.component_names = {"det_p", "det_p_prime", "det_p_n", "det_p_prime_n", "normalized"};
  if (stationary_second) table.component_names.push_back("c_scaled");

  for (const double t0 : scenario.t0_grid.points()) {
    for (const double tau : scenario.tau_grid.points()) {
      const TimeDomainSet set1 = TimeDomainSet::arithmetic(
          1, t0, tau, scenario.time_set.k_count, scenario.time_set.j_offsets[0]);
      const auto records1 = records_from_trajectory(model, rho0, set1, m, opts);
      std::vector<PopulationRecord> records2;
      if (stationary_second) {
        records2 = records_stationary_collapse(model, tau, m, opts);
      } else {
        const TimeDomainSet set2 = TimeDomainSet::arithmetic(
            2, t0, tau, scenario.time_set.k_count, scenario.time_set.j_offsets[1]);
        records2 = records_from_trajectory(model, rho0, set2, m, opts);
      }
      WitnessResult w = witness_womega(records1, records2, n, scenario.threshold);
      if (stationary_second) {
        // det(P') is the product of stationary populations, so dividing by it
        // applies the stationary c = (p_1 p_2 p_3)^-1 scaling exactly.
        const double det_prime = w.component("det_p_prime");
        w.components.push_back(
            {"c_scaled", det_prime != 0.0 ? w.value / std::abs(det_prime) : 0.0});
      }
      push_row(table, t0, tau, std::move(w));
    }
  }
  return table;
}

ResultTable run_fmo(const Scenario& scenario) {
  const ModelSpec& model = scenario.model;
  const double temperature = require_quantity(model, "temperature", "K");
  const double lambda =
      model.quantities.count("lambda") ? require_quantity(model, "lambda", "cm^-1") : 35.0;
  const double gamma_inv =
      model.quantities.count("gamma_inv") ? require_quantity(model, "gamma_inv", "fs") : 50.0;
  const int tier_cap = static_cast<int>(number_or(model, "Nc", 8));
  const int matsubara = static_cast<int>(number_or(model, "K", 0));
  const std::string path =
      model.data_path.empty() ? "data/fmo_hamiltonian.json" : model.data_path;

  FmoParameters params = fmo_model(temperature, lambda, gamma_inv, tier_cap, matsubara, path);
  if (scenario.solver.dt > 0) params.dt_fs = scenario.solver.dt;
  HeomConfig config = fmo_heom_config(params);
  const HeomSolver solver(config);

  const int m = scenario.m - 1;
  const int d = static_cast<int>(config.hamiltonian.rows());
  const bool partial = scenario.witness == "wq-partial";

  ResultTable table;
  table.component_names = {"expectation", "classical_sum"};
  if (partial) {
    table.component_names.push_back("running_sum");
    table.component_names.push_back("terms_consumed");
    table.component_names.push_back("first_term");
  }

  const auto t0s = scenario.t0_grid.points();
  const auto taus = scenario.tau_grid.points();

  HilbertSpace space(d);
  HierarchyState base =
      solver.initial_state(DensityMatrix::basis_state(space, scenario.initial_state - 1));
  for (const double t0 : t0s) {
    base = solver.evolve(std::move(base), t0 - base.time);
    const RealVector p = solver.physical_populations(base);

    // Conditional (bath-retaining) states for every outcome, evolved in
    // lockstep with an unmeasured copy over the tau grid. Outcomes with no
    // probability weight carry a zero witness term and are skipped.
    constexpr double kProbabilityFloor = 1e-10;
    std::vector<std::optional<HierarchyState>> conditionals(d);
    for (int outcome = 0; outcome < d; ++outcome) {
      if (p[outcome] > kProbabilityFloor) {
        conditionals[outcome] = solver.conditional(base, outcome, kProbabilityFloor);
      }
    }
    HierarchyState unmeasured = base;
    double tau_reached = 0.0;
    for (const double tau : taus) {
      const double step = tau - tau_reached;
      unmeasured = solver.evolve(std::move(unmeasured), step);
      for (auto& conditional : conditionals) {
        if (conditional) conditional = solver.evolve(std::move(*conditional), step);
      }
      tau_reached = tau;

      const double expectation = solver.physical_populations(unmeasured)[m];
      RealVector omega_row(d);
      for (int outcome = 0; outcome < d; ++outcome) {
        omega_row[outcome] =
            conditionals[outcome] ? solver.physical_populations(*conditionals[outcome])[m] : 0.0;
      }
      WitnessResult w = witness_wq(expectation, p, omega_row, scenario.threshold);
      if (partial) {
        std::vector<double> terms(d);
        for (int outcome = 0; outcome < d; ++outcome) terms[outcome] = p[outcome] * omega_row[outcome];
        const PartialWitnessResult pw =
            witness_wq_partial(expectation, terms, scenario.threshold);
        w.detected = pw.detected || w.detected;
        w.components.push_back({"running_sum", pw.running_sum});
        w.components.push_back({"terms_consumed", static_cast<double>(pw.terms_consumed)});
        w.components.push_back({"first_term", terms[0]});
      }
      push_row(table, t0, tau, std::move(w));
    }
  }
  table.metadata["propagator"] =
      "conditional site projections retaining the auxiliary matrices (bath state kept)";
  return table;
}

}  // namespace

ResultTable run_scenario(const Scenario& scenario) {
  const auto problems = scenario.diagnostics();
  if (!problems.empty()) {
    std::string joined;
    for (const auto& p : problems) joined += p + "; ";
    throw ScenarioError("invalid scenario: " + joined);
  }

  ResultTable table;
  if (scenario.model.kind == "photonic") {
    table = run_photonic(scenario);
  } else if (scenario.model.kind == "transmon") {
    table = run_transmon(scenario);
  } else if (scenario.model.kind == "fmo") {
    table = run_fmo(scenario);
  } else {
    const LindbladModel model = build_lindblad(scenario.model);
    if (scenario.witness == "womega") {
      table = run_lindblad_womega(scenario, model);
    } else if (scenario.witness == "wqq") {
      table = run_lindblad_wqq(scenario, model);
    } else {
      table = run_lindblad_wq(scenario, model);
    }
  }
  table.metadata["scenario"] = scenario.name;
  table.metadata["witness"] = scenario.witness;
  table.metadata["version"] = kVersion;
  return table;
}

std::string ResultTable::to_csv() const {
  std::ostringstream csv;
  csv << "t0,tau,value,detected";
  for (const auto& name : component_names) csv << "," << name;
  csv << "\n";
  for (const auto& row : rows) {
    csv << format_number(row.t0) << "," << format_number(row.tau) << ","
        << format_number(row.witness.value) << "," << (row.witness.detected ? 1 : 0);
    for (const auto& name : component_names) {
      csv << ",";
      csv << (row.witness.has_component(name) ? format_number(row.witness.component(name)) : "");
    }
    csv << "\n";
  }
  return csv.str();
}

std::string ResultTable::to_json_records(const std::string& witness, int m, int n) const {
  json records = json::array();
  for (const auto& row : rows) {
    json record{{"witness", witness}, {"m", m},
                {"n", n},             {"t0", row.t0},
                {"tau", row.tau},     {"value", row.witness.value},
                {"detected", row.witness.detected}, {"threshold", row.witness.threshold}};
    json components = json::object();
    for (const auto& [key, value] : row.witness.components) components[key] = value;
    record["components"] = components;
    if (!row.witness.conclusive) record["inconclusive"] = true;
    records.push_back(std::move(record));
  }
  return records.dump(2);
}

std::string write_outputs(const Scenario& scenario, const ResultTable& table) {
  namespace fs = std::filesystem;
  const fs::path dir(scenario.output.directory);
  fs::create_directories(dir);
  const std::string stem = scenario.name.empty() ? "scenario" : scenario.name;
  const fs::path csv_path =
      dir / (scenario.output.csv.empty() ? stem + ".csv" : scenario.output.csv);
  const fs::path meta_path =
      dir / (scenario.output.metadata.empty() ? stem + ".meta.json" : scenario.output.metadata);

  std::ofstream csv(csv_path);
  csv << table.to_csv();

  const fs::path records_path = dir / (stem + ".results.json");
  std::ofstream records(records_path);
  records << table.to_json_records(scenario.witness, scenario.m, scenario.n) << "\n";

  json meta;
  meta["scenario"] = json::parse(scenario.to_json_string());
  meta["columns"] = json::array({"t0", "tau", "value", "detected"});
  for (const auto& name : table.component_names) meta["columns"].push_back(name);
  for (const auto& [key, value] : table.metadata) meta["run"][key] = value;
  meta["rows"] = table.rows.size();
  // Timestamp lives only here, never in the CSV, so fixed-step reruns stay
  // byte-identical.
  meta["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  std::ofstream metaf(meta_path);
  metaf << meta.dump(2) << "\n";

  if (scenario.output.svg) {
    std::vector<double> xs, ys;
    for (const auto& row : table.rows) {
      if (xs.empty() || row.t0 > xs.back()) xs.push_back(row.t0);
    }
    std::set<double> yset;
    for (const auto& row : table.rows) yset.insert(row.tau);
    ys.assign(yset.begin(), yset.end());
    std::vector<std::vector<double>> values(ys.size(), std::vector<double>(xs.size(), 0.0));
    for (const auto& row : table.rows) {
      const auto xi = std::lower_bound(xs.begin(), xs.end(), row.t0) - xs.begin();
      const auto yi = std::lower_bound(ys.begin(), ys.end(), row.tau) - ys.begin();
      values[yi][xi] = row.witness.value;
    }
    const fs::path svg_path = dir / (stem + ".svg");
    std::ofstream svg(svg_path);
    svg << render_grid_svg(xs, ys, values, scenario.name, "t0", "tau");
  }
  return csv_path.string();
}

// ---------------------------------------------------------------------------

namespace {

Scenario make_preset(const std::string& name) {
  Scenario s;
  s.name = name;
  s.solver.method = "adaptive";
  if (name == "cpb") {
    s.model.kind = "cooper_pair_box";
    s.model.quantities["E_J"] = {51.8, "ueV"};
    s.model.numbers["n_g"] = 0.5;
    s.witness = "womega";
    s.m = 2;
    s.n = 1;
    s.time_set = {2, {0.0, 1.0}, "trajectory"};
    // Two Rabi periods (T_R ~ 79.84 ps for E_J = 51.8 ueV).
    s.t0_grid = {2.0, 160.0, 40};
    s.tau_grid = {2.0, 160.0, 40};
  } else if (name == "transmon") {
    s.model.kind = "transmon";
    s.model.numbers["process_fidelity"] = 0.94;
    s.witness = "wq";
    s.t0_grid = {0.0, 0.0, 1};
    s.tau_grid = {0.0, 0.0, 1};
  } else if (name == "dqd") {
    s.model.kind = "dqd";
    s.model.numbers["Delta"] = 1.0;
    s.model.numbers["Gamma_L"] = 4.0;
    s.model.numbers["Gamma_R"] = 0.1;
    s.witness = "wq";
    s.m = 3;
    s.initial_state = 1;
    s.t0_grid = {0.1, 6.0, 30};
    s.tau_grid = {0.1, 6.0, 30};
  } else if (name == "fmo77" || name == "fmo300") {
    s.model.kind = "fmo";
    s.model.quantities["temperature"] = {name == "fmo77" ? 77.0 : 300.0, "K"};
    s.model.quantities["lambda"] = {35.0, "cm^-1"};
    s.model.quantities["gamma_inv"] = {50.0, "fs"};
    s.model.numbers["Nc"] = 8;
    s.model.numbers["K"] = 0;
    s.model.data_path = "data/fmo_hamiltonian.json";
    s.witness = "wq-partial";
    s.m = 1;
    s.initial_state = 1;
    s.solver.method = "fixed-rk4";
    s.solver.dt = 0.5;
    s.t0_grid = {50.0, 400.0, 8};
    s.tau_grid = {25.0, 100.0, 4};
  } else if (name == "jc-hiq" || name == "jc-loq") {
    s.model.kind = "jc";
    s.model.quantities["omega_R_over_2pi"] = {47.0, "kHz"};
    s.model.quantities["omega_0"] = {51.1, "GHz"};
    s.model.numbers["Q"] = name == "jc-hiq" ? 7e7 : 7e5;
    s.witness = "womega";
    s.m = 1;
    s.n = 1;
    s.time_set = {3, {0.0, 1.0}, "trajectory"};
    // Rabi period T_R = 2*pi/omega_R ~ 21.28 us. The probe window sits past
    // the low-Q cavity's irreversible transient; the high-Q cavity still
    // oscillates there.
    const double rabi_period = 1e3 / 47.0;
    s.t0_grid = {2.0 * rabi_period, 4.0 * rabi_period, 25};
    s.tau_grid = {0.04 * rabi_period, 1.0 * rabi_period, 25};
  } else if (name == "photonic") {
    s.model.kind = "photonic";
    s.witness = "wq";
    s.m = 1;
    s.n = 2;
    s.t0_grid = {0.0, constants::pi / 4.0, 100};
    s.tau_grid = {0.0, constants::pi / 2.0, 100};
  } else {
    throw ScenarioError("unknown preset '" + name + "'");
  }
  return s;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  return {
      {"cpb", "Cooper-pair box at charge resonance, W_Omega21 over two Rabi periods"},
      {"transmon", "94%-fidelity Hadamard process, single-point W_Q"},
      {"dqd", "double quantum dot (Gamma_L=4, Gamma_R=0.1, Delta=1), W_Q at m=3"},
      {"fmo77", "FMO complex at 77 K via HEOM, partial-sum W_Q on site 1"},
      {"fmo300", "FMO complex at 300 K via HEOM, partial-sum W_Q on site 1"},
      {"jc-hiq", "lossy Jaynes-Cummings cavity, Q=7e7, W_Omega11"},
      {"jc-loq", "lossy Jaynes-Cummings cavity, Q=7e5 (irreversible regime), W_Omega11"},
      {"photonic", "waveplate rotations, W_Q over the (phi, theta) grid"},
  };
}

bool is_preset(const std::string& name) {
  for (const auto& preset : list_presets()) {
    if (preset.name == name) return true;
  }
  return false;
}

Scenario preset_scenario(const std::string& name) { return make_preset(name); }

}  // namespace qwit
