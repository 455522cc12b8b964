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

#include "qwit/models.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "qwit/constants.hpp"

namespace qwit {

namespace cn = constants;

UnitSystem UnitSystem::micro_ev_ps() {
  // E/hbar with hbar in ueV*ps.
  return {"ueV-ps", "ps", 1.0 / cn::hbar_ueV_ps, 1.0};
}

UnitSystem UnitSystem::khz_us() {
  // Plain frequency in kHz to angular rad/us: 2*pi * 1e3 Hz * 1e-6 s.
  return {"kHz-us", "us", cn::two_pi * 1e-3, 1.0};
}

UnitSystem UnitSystem::wavenumber_fs() {
  return {"cm1-fs", "fs", cn::rad_fs_per_cm1, 1.0};
}

UnitSystem UnitSystem::dimensionless() { return {"dimensionless", "1/rate", 1.0, 1.0}; }

// ---------------------------------------------------------------------------

LindbladModel cooper_pair_box(double ej_ueV, double ec_ueV, double ng) {
  if (ej_ueV <= 0) throw std::invalid_argument("cooper_pair_box: E_J must be positive");
  const UnitSystem units = UnitSystem::micro_ev_ps();
  const double ej = ej_ueV * units.energy_to_angular;
  const double ec = ec_ueV * units.energy_to_angular;
  ComplexMatrix h(2, 2);
  h << Complex(ec * (1.0 - 2.0 * ng) / 2.0 * (-1.0), 0.0), Complex(-ej / 2.0, 0.0),
      Complex(-ej / 2.0, 0.0), Complex(ec * (1.0 - 2.0 * ng) / 2.0, 0.0);
  return LindbladModel(HilbertSpace(2, {"1", "2"}), std::move(h));
}

double cooper_pair_box_period_ps(double ej_ueV) {
  return cn::two_pi * cn::hbar_ueV_ps / ej_ueV;
}

// ---------------------------------------------------------------------------

ProcessMap::ProcessMap(std::vector<ComplexMatrix> kraus_ops) : kraus(std::move(kraus_ops)) {
  if (kraus.empty()) throw std::invalid_argument("ProcessMap: no Kraus operators");
  const auto d = kraus.front().rows();
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw std::invalid_argument("ProcessMap: Kraus operators must share one dimension");
    }
    completeness += k.adjoint() * k;
  }
  if ((completeness - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("ProcessMap: Kraus operators are not trace preserving");
  }
}

ComplexMatrix ProcessMap::apply(const ComplexMatrix& rho) const {
  const auto d = kraus.front().rows();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

ProcessMap ProcessMap::compose(const ProcessMap& first) const {
  std::vector<ComplexMatrix> ops;
  ops.reserve(kraus.size() * first.kraus.size());
  for (const auto& outer : kraus) {
    for (const auto& inner : first.kraus) ops.push_back(outer * inner);
  }
  return ProcessMap(std::move(ops));
}

ProcessMap hadamard_process() {
  ComplexMatrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return ProcessMap({h});
}

ProcessMap depolarizing_process(int dim, double strength) {
  if (dim != 2) throw std::invalid_argument("depolarizing_process: implemented for qubits");
  if (strength < 0 || strength > 1) {
    throw std::invalid_argument("depolarizing_process: strength must lie in [0,1]");
  }
  const Complex i(0.0, 1.0);
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  const double p = strength;
  return ProcessMap({std::sqrt(1.0 - 0.75 * p) * id, std::sqrt(p / 4.0) * x,
                     std::sqrt(p / 4.0) * y, std::sqrt(p / 4.0) * z});
}

ProcessMap degraded_hadamard(double depolarizing_strength) {
  return depolarizing_process(2, depolarizing_strength).compose(hadamard_process());
}

double process_fidelity(const ProcessMap& process, const ComplexMatrix& ideal_unitary) {
  const auto d = ideal_unitary.rows();
  if (process.dim() != d) throw std::invalid_argument("process_fidelity: dimension mismatch");
  double fidelity = 0.0;
  for (const auto& k : process.kraus) {
    fidelity += std::norm((ideal_unitary.adjoint() * k).trace());
  }
  return fidelity / static_cast<double>(d * d);
}

double depolarizing_strength_for_fidelity(double target_fidelity) {
  if (target_fidelity < 0.25 || target_fidelity > 1.0) {
    throw std::invalid_argument("depolarizing_strength_for_fidelity: F must lie in [0.25, 1]");
  }
  return 4.0 * (1.0 - target_fidelity) / 3.0;
}

WitnessResult transmon_hadamard_witness(const ProcessMap& process, double threshold) {
  if (process.dim() != 2) {
    throw std::invalid_argument("transmon_hadamard_witness: process must act on a qubit");
  }
  ComplexMatrix rho0 = ComplexMatrix::Zero(2, 2);
  rho0(0, 0) = 1.0;

  const ComplexMatrix once = process.apply(rho0);
  RealVector p(2);
  p << once(0, 0).real(), once(1, 1).real();

  RealVector omega_row(2);
  for (int n = 0; n < 2; ++n) {
    ComplexMatrix basis = ComplexMatrix::Zero(2, 2);
    basis(n, n) = 1.0;
    omega_row[n] = process.apply(basis)(0, 0).real();
  }

  const double twice = process.apply(once)(0, 0).real();
  return witness_wq(twice, p, omega_row, threshold);
}

// ---------------------------------------------------------------------------

LindbladModel double_quantum_dot(double delta, double gamma_left, double gamma_right) {
  if (gamma_left < 0 || gamma_right < 0) {
    throw std::invalid_argument("double_quantum_dot: rates must be nonnegative");
  }
  HilbertSpace space(3, {"1", "2", "3"});  // |0>, |L>, |R>
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(1, 2) = delta;
  h(2, 1) = delta;
  ComplexMatrix in_left = ComplexMatrix::Zero(3, 3);   // |L><0|
  in_left(1, 0) = 1.0;
  ComplexMatrix out_right = ComplexMatrix::Zero(3, 3);  // |0><R|
  out_right(0, 2) = 1.0;
  return LindbladModel(std::move(space), std::move(h),
                       {{std::move(in_left), gamma_left}, {std::move(out_right), gamma_right}});
}

// ---------------------------------------------------------------------------

double jc_kappa(double transition_GHz, double quality_factor) {
  if (quality_factor <= 0) throw std::invalid_argument("jc_cavity: Q must be positive");
  // omega_0 in rad/us: 2*pi * GHz * 1e9 Hz * 1e-6 s.
  const double omega0 = cn::two_pi * transition_GHz * 1e3;
  return omega0 / quality_factor;
}

LindbladModel jc_cavity(double rabi_kHz, double transition_GHz, double quality_factor) {
  if (rabi_kHz <= 0) throw std::invalid_argument("jc_cavity: omega_R must be positive");
  const UnitSystem units = UnitSystem::khz_us();
  const double omega_r = rabi_kHz * units.energy_to_angular;
  const double kappa = jc_kappa(transition_GHz, quality_factor);
  HilbertSpace space(3, {"e0", "g1", "g0"});
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 1) = omega_r / 2.0;
  h(1, 0) = omega_r / 2.0;
  ComplexMatrix loss = ComplexMatrix::Zero(3, 3);  // photon escape |g0><g1|
  loss(2, 1) = 1.0;
  return LindbladModel(std::move(space), std::move(h), {{std::move(loss), kappa}});
}

// ---------------------------------------------------------------------------

ComplexMatrix half_waveplate(double phi) {
  const double c = std::cos(2.0 * phi), s = std::sin(2.0 * phi);
  ComplexMatrix h(2, 2);
  h << c, -s, -s, -c;
  return h;
}

ComplexMatrix quarter_waveplate(double theta) {
  const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexMatrix q(2, 2);
  q << r * (i - c), r * s, r * s, r * (i + c);
  return q;
}

ComplexMatrix waveplate_rotation(double phi, double theta) {
  ComplexMatrix r = quarter_waveplate(theta) * half_waveplate(phi);
  if ((r * r.adjoint() - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::runtime_error("waveplate_rotation: composed rotation lost unitarity");
  }
  return r;
}

PhotonicWitness photonic_witness(double phi, double theta, double threshold) {
  const ComplexMatrix r = waveplate_rotation(phi, theta);
  ComplexMatrix ket_h = ComplexMatrix::Zero(2, 2);
  ket_h(0, 0) = 1.0;  // m = H
  const ComplexMatrix rho0 = r.adjoint() * ket_h * r;

  RealVector p(2);
  p << rho0(0, 0).real(), rho0(1, 1).real();
  RealVector omega_row(2);
  omega_row << std::norm(r(0, 0)), std::norm(r(0, 1));
  const double expectation = (r * rho0 * r.adjoint())(0, 0).real();

  PhotonicWitness out;
  out.numeric = witness_wq(expectation, p, omega_row, threshold);
  out.analytic = std::abs(
      1.0 - (10.0 + 2.0 * std::cos(4.0 * theta) + 2.0 * std::cos(4.0 * theta - 8.0 * phi) +
             std::cos(8.0 * theta - 8.0 * phi) + std::cos(8.0 * phi)) /
                16.0);
  return out;
}

// ---------------------------------------------------------------------------

FmoParameters FmoParameters::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("FmoParameters: cannot open Hamiltonian data file '" + path +
                             "'; the seven-site matrix ships with the source tree");
  }
  nlohmann::json j;
  in >> j;

  FmoParameters params;
  params.sites = j.at("sites").get<int>();
  const auto flat = j.at("hamiltonian_cm1").get<std::vector<double>>();
  if (static_cast<int>(flat.size()) != params.sites * params.sites) {
    throw std::runtime_error("FmoParameters: hamiltonian_cm1 must hold sites^2 entries");
  }
  params.hamiltonian_cm1.resize(params.sites, params.sites);
  for (int r = 0; r < params.sites; ++r) {
    for (int c = 0; c < params.sites; ++c) {
      params.hamiltonian_cm1(r, c) = flat[r * params.sites + c];  // row-major in the file
    }
  }
  params.lambda_cm1 = j.at("lambda_cm1").get<double>();
  params.gamma_inv_fs = j.at("gamma_inv_fs").get<double>();
  params.temperature_K = j.at("temperature_K").get<double>();
  params.tier_cap = j.at("Nc").get<int>();
  params.matsubara_cutoff = j.at("K").get<int>();
  params.dt_fs = j.at("dt_fs").get<double>();
  return params;
}

HeomConfig fmo_heom_config(const FmoParameters& params) {
  if ((params.hamiltonian_cm1 - params.hamiltonian_cm1.transpose()).cwiseAbs().maxCoeff() >
      1e-9) {
    throw std::invalid_argument("fmo_heom_config: site Hamiltonian must be symmetric");
  }
  HeomConfig config;
  config.hamiltonian = (params.hamiltonian_cm1 * cn::rad_fs_per_cm1).cast<Complex>();
  config.baths.assign(params.sites, DrudeBathSpec::from_lab_units(
                                        params.lambda_cm1, params.gamma_inv_fs,
                                        params.temperature_K));
  config.matsubara_cutoff = params.matsubara_cutoff;
  config.tier_cap = params.tier_cap;
  config.dt = params.dt_fs;
  return config;
}

FmoParameters fmo_model(double temperature_K, double lambda_cm1, double gamma_inv_fs,
                        int tier_cap, int matsubara_cutoff, const std::string& data_path) {
  FmoParameters params = FmoParameters::from_json_file(data_path);
  params.temperature_K = temperature_K;
  params.lambda_cm1 = lambda_cm1;
  params.gamma_inv_fs = gamma_inv_fs;
  params.tier_cap = tier_cap;
  params.matsubara_cutoff = matsubara_cutoff;
  return params;
}

}  // namespace qwit
