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

#include "qwit/linalg.hpp"
#include "qwit/ode.hpp"

namespace qwit {

// Tolerances used when validating quantum-state invariants.
struct StateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-9;
  double positivity = 1e-8;  // smallest eigenvalue may dip to -positivity
};

struct HilbertSpace {
  int dim = 0;
  std::vector<std::string> labels;  // optional; generated as "1".."d" if empty

  explicit HilbertSpace(int d);
  HilbertSpace(int d, std::vector<std::string> basis_labels);
  bool operator==(const HilbertSpace& other) const { return dim == other.dim; }
};

/// Trace-one Hermitian positive matrix. Validated on construction.
class DensityMatrix {
 public:
  DensityMatrix(HilbertSpace space, ComplexMatrix rho,
                const StateTolerances& tol = StateTolerances{});

  static DensityMatrix basis_state(const HilbertSpace& space, int n);
  static DensityMatrix maximally_mixed(const HilbertSpace& space);
  static DensityMatrix pure(const HilbertSpace& space, const ComplexVector& amplitudes);

  const HilbertSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return rho_; }
  int dim() const { return space_.dim; }

 private:
  HilbertSpace space_;
  ComplexMatrix rho_;
};

/// Rank-one projector Q_n = |n><n| in the measurement basis.
struct Projector {
  int dim = 0;
  int index = 0;

  Projector(int dim, int index);
  ComplexMatrix matrix() const;
};

struct CollapseTerm {
  ComplexMatrix op;
  double rate = 0.0;
};

/// Hamiltonian (angular-frequency units, hbar = 1) plus weighted collapse
/// operators generating dρ/dt = -i[H,ρ] + Σ_k γ_k D[L_k]ρ.
struct LindbladModel {
  HilbertSpace space;
  ComplexMatrix hamiltonian;
  std::vector<CollapseTerm> collapse;

  LindbladModel(HilbertSpace space, ComplexMatrix hamiltonian,
                std::vector<CollapseTerm> collapse = {});

  int dim() const { return space.dim; }
  bool is_closed() const { return collapse.empty(); }
};

/// Conditional probabilities Omega(m,n) = P(m at t0+tau | prepared in n at t0).
/// Columns sum to one.
struct Propagator {
  double tau = 0.0;
  RealMatrix omega;

  Propagator(double tau, RealMatrix omega);
  double operator()(int m, int n) const { return omega(m, n); }
  int dim() const { return static_cast<int>(omega.rows()); }
};

struct EvolveOptions {
  OdeMethod method = OdeMethod::kAdaptiveRk45;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double fixed_dt = 0.0;
};

/// Lindblad right-hand side applied to an arbitrary (not necessarily
/// Hermitian) matrix; this is what the quantum regression step evolves.
ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& x);

/// Lindblad generator as a dim^2 x dim^2 superoperator on column-stacked
/// matrices.
ComplexMatrix liouvillian_matrix(const LindbladModel& model);

DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho, double duration,
                     const EvolveOptions& opts = EvolveOptions{});

/// Evolves a general matrix under the same generator (no state validation).
ComplexMatrix evolve_matrix(const LindbladModel& model, const ComplexMatrix& x, double duration,
                            const EvolveOptions& opts = EvolveOptions{});

/// <Q_n> = tr(Q_n rho), clamped to [0,1] after a tolerance check.
double population(const DensityMatrix& rho, int n);

/// All diagonal occupations as a real vector (clamped like population()).
RealVector populations(const DensityMatrix& rho);

/// Non-selective measurement in the computational basis: off-diagonals are
/// zeroed, the diagonal is preserved bitwise.
DensityMatrix dephase(const DensityMatrix& rho);

/// Propagator built by preparing each basis state and evolving for tau.
/// Valid when system and environment stay uncorrelated (Markovian models).
Propagator propagator_markov(const LindbladModel& model, double tau,
                             const EvolveOptions& opts = EvolveOptions{});

/// Quantum two-time correlator <Q_m(t) Q_n(t0)> via the regression recipe:
/// evolve rho0 to t0, right-multiply by Q_n, evolve the result for t - t0
/// under the same generator, then trace against Q_m.
Complex two_time_correlator(const LindbladModel& model, const DensityMatrix& rho0, int m, int n,
                            double t0, double t, const EvolveOptions& opts = EvolveOptions{});

/// Stationary state as the null vector of the Liouvillian (smallest
/// eigenvalue by magnitude), normalized to unit trace.
DensityMatrix stationary_state(const LindbladModel& model);

}  // namespace qwit
