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

#include <string>
#include <vector>

#include "qwit/heom.hpp"
#include "qwit/quantum.hpp"
#include "qwit/witnesses.hpp"

namespace qwit {

/// Conversion factors from a model's lab units to the internal convention
/// (hbar = 1, energies as angular frequencies per time unit).
struct UnitSystem {
  std::string name;
  std::string time_unit;
  double energy_to_angular = 1.0;  // lab energy/frequency unit -> rad per time unit
  double time_to_internal = 1.0;   // lab time unit -> internal time unit

  static UnitSystem micro_ev_ps();   // ueV energies, picosecond times
  static UnitSystem khz_us();        // kHz plain frequencies, microsecond times
  static UnitSystem wavenumber_fs(); // cm^-1 energies, femtosecond times
  static UnitSystem dimensionless();
};

// ---------------------------------------------------------------------------
// Cooper-pair box (closed two-level system, times in ps)

/// H = E_C(1-2n_g)/2 (|2><2| - |1><1|) - E_J/2 (|1><2| + |2><1|), converted
/// from ueV to rad/ps. At n_g = 0.5 the charging term vanishes and the two
/// charge states are in resonance.
LindbladModel cooper_pair_box(double ej_ueV, double ec_ueV = 0.0, double ng = 0.5);

/// Rabi period 2*pi*hbar/E_J in ps.
double cooper_pair_box_period_ps(double ej_ueV);

// ---------------------------------------------------------------------------
// Transmon Hadamard gate as an abstract process

/// Completely positive trace-preserving map given by Kraus operators.
struct ProcessMap {
  std::vector<ComplexMatrix> kraus;

  explicit ProcessMap(std::vector<ComplexMatrix> kraus_ops);
  int dim() const { return static_cast<int>(kraus.front().rows()); }
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  ProcessMap compose(const ProcessMap& first) const;  // this after first
};

ProcessMap hadamard_process();
ProcessMap depolarizing_process(int dim, double strength);

/// Ideal Hadamard followed by a depolarizing channel of the given strength.
ProcessMap degraded_hadamard(double depolarizing_strength);

/// Entanglement (process) fidelity against an ideal unitary:
/// F = (1/d^2) sum_k |tr(U^dag K_k)|^2.
double process_fidelity(const ProcessMap& process, const ComplexMatrix& ideal_unitary);

/// Depolarizing strength that degrades an ideal gate to the target process
/// fidelity: p = 4(1-F)/3 on a qubit.
double depolarizing_strength_for_fidelity(double target_fidelity);

/// W_Q = |<0(E^2)> - sum_n p_n(E) Omega_0n(E)| for input |0>.
WitnessResult transmon_hadamard_witness(const ProcessMap& process,
                                        double threshold = kDefaultWitnessThreshold);

// ---------------------------------------------------------------------------
// Double quantum dot under large bias (dimensionless units)

/// Basis {|0>, |L>, |R>} reported as states 1, 2, 3. Tunneling Delta between
/// the dots; jump |L><0| at Gamma_L (lead fills the left dot) and |0><R| at
/// Gamma_R (right dot empties into the lead).
LindbladModel double_quantum_dot(double delta, double gamma_left, double gamma_right);

// ---------------------------------------------------------------------------
// Lossy Jaynes-Cummings cavity (times in us)

/// Single-excitation basis |1> = |e,0>, |2> = |g,1>, |3> = |g,0>; coherent
/// coupling omega_R/2 between |1> and |2>, photon loss |3><2| at
/// kappa = omega_0/Q.
LindbladModel jc_cavity(double rabi_kHz, double transition_GHz, double quality_factor);

/// kappa in rad/us for the given cavity parameters.
double jc_kappa(double transition_GHz, double quality_factor);

// ---------------------------------------------------------------------------
// Photonic polarization rotations (angle domain)

ComplexMatrix half_waveplate(double phi);
ComplexMatrix quarter_waveplate(double theta);
/// R(phi, theta) = Q_wp(theta) H_wp(phi).
ComplexMatrix waveplate_rotation(double phi, double theta);

struct PhotonicWitness {
  WitnessResult numeric;  // matrix pipeline through witness_wq
  double analytic = 0.0;  // closed form in (phi, theta)
};

/// Initial state rho_0 = R^dag |H><H| R; measurement basis m = H, n = V.
PhotonicWitness photonic_witness(double phi, double theta,
                                 double threshold = kDefaultWitnessThreshold);

// ---------------------------------------------------------------------------
// FMO pigment-protein complex via HEOM (times in fs)

struct FmoParameters {
  int sites = 7;
  RealMatrix hamiltonian_cm1;  // row-major in the data file
  double lambda_cm1 = 35.0;
  double gamma_inv_fs = 50.0;
  double temperature_K = 300.0;
  int tier_cap = 8;         // Nc
  int matsubara_cutoff = 0; // K
  double dt_fs = 0.5;

  static FmoParameters from_json_file(const std::string& path);
};

/// HEOM configuration for the FMO complex; Hamiltonian converted from cm^-1
/// to rad/fs, one Drude bath per site.
HeomConfig fmo_heom_config(const FmoParameters& params);

/// Convenience builder applying overrides to the shipped data file.
FmoParameters fmo_model(double temperature_K, double lambda_cm1 = 35.0,
                        double gamma_inv_fs = 50.0, int tier_cap = 8, int matsubara_cutoff = 0,
                        const std::string& data_path = "data/fmo_hamiltonian.json");

}  // namespace qwit
