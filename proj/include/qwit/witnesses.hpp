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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qwit/linalg.hpp"
#include "qwit/quantum.hpp"

namespace qwit {

inline constexpr double kDefaultWitnessThreshold = 1e-6;
inline constexpr double kDefaultSingularTol = 1e-10;

/// Outcome of a witness evaluation. `value` is the raw witness magnitude;
/// `threshold` is the threshold actually applied (already conditioning-scaled
/// for the propagator-comparison witness), so detected <=> value > threshold.
/// Near-singular propagator reconstructions are reported as inconclusive and
/// never count as detections.
struct WitnessResult {
  double value = 0.0;
  double threshold = kDefaultWitnessThreshold;
  bool detected = false;
  bool conclusive = true;
  std::vector<std::pair<std::string, double>> components;

  double component(const std::string& name) const;
  bool has_component(const std::string& name) const;
};

/// |<Q_m(t)Q_n(t0)>_Q - p_n(t0) Omega_mn|. Diagnostic only: the correlator is
/// not directly measurable when the first projective measurement destroys the
/// coherence it probes.
WitnessResult witness_wqq(Complex correlator, double p_n, double omega_mn,
                          double threshold = kDefaultWitnessThreshold);

/// First witness: |<Q_m(t)> - sum_n p_n(t0) Omega_mn(tau)|. `propagator_terms`
/// holds Omega_mn for n = 1..d, built by the same preparation procedure as the
/// populations.
WitnessResult witness_wq(double expectation, const RealVector& populations,
                         const RealVector& propagator_terms,
                         double threshold = kDefaultWitnessThreshold);

struct PartialWitnessResult {
  double expectation = 0.0;
  double running_sum = 0.0;
  int terms_consumed = 0;
  bool detected = false;
};

/// Consumes the nonnegative term stream p_n(t0) Omega_mn one entry at a time
/// and stops as soon as the partial sum alone exceeds the expectation value.
PartialWitnessResult witness_wq_partial(double expectation, std::span<const double> terms,
                                        double threshold = kDefaultWitnessThreshold);

/// Raised when the population matrix of a time-domain set is too close to
/// singular for the propagator to be determined.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double det_magnitude)
      : std::runtime_error(what), det_magnitude(det_magnitude) {}
  double det_magnitude;
};

struct PropagatorSolution {
  RealVector omega;         // agreed value (LU route)
  RealVector omega_cramer;  // Cramer route, must match omega within 1e-8
  double det_p = 0.0;
  double scale = 0.0;  // Hadamard bound of det(P), the conditioning scale
};

/// Solves P Omega = q for the propagator vector both by Cramer's rule and by
/// an LU factorization; the two routes must agree within 1e-8. Throws
/// SingularSystemError when |det P| <= singular_tol * scale.
PropagatorSolution solve_propagator_vector(const RealMatrix& p, const RealVector& q,
                                           double singular_tol = kDefaultSingularTol);

/// One time pair of a time-domain set: populations at t0 and the expectation
/// value <Q_m> at t = t0 + tau.
struct PopulationRecord {
  double t0 = 0.0;
  double t = 0.0;
  RealVector populations;
  double expectation = 0.0;
};

/// The j-th time-domain set: d start times sharing a common difference tau.
struct TimeDomainSet {
  int label = 1;
  double tau = 0.0;
  std::vector<double> start_times;

  /// start_times[k-1] = (k + offset) * base for k = 1..count. The Cooper-pair
  /// box and cavity examples use offset = j - 1; the quantum-dot example uses
  /// offset = c' * (j - 1).
  static TimeDomainSet arithmetic(int label, double base, double tau, int count, double offset);

  void validate() const;
};

/// Second witness: |det(P_j^(n)) det(P_j') - det(P_j'^(n)) det(P_j)| where
/// P^(n) replaces column n with the expectation vector. The detection
/// threshold is scaled by |det(P_j) det(P_j')|; when either determinant falls
/// below its singularity floor the result is inconclusive.
WitnessResult witness_womega(std::span<const PopulationRecord> set_j,
                             std::span<const PopulationRecord> set_jp, int n,
                             double threshold = kDefaultWitnessThreshold,
                             double singular_tol = kDefaultSingularTol);

/// Fills records for a time-domain set from a Markovian model: populations
/// come from the trajectory of rho0, expectations from the same trajectory at
/// t0 + tau.
std::vector<PopulationRecord> records_from_trajectory(const LindbladModel& model,
                                                      const DensityMatrix& rho0,
                                                      const TimeDomainSet& set, int m,
                                                      const EvolveOptions& opts = EvolveOptions{});

/// Records for a stationary epoch probed by collapsing invasive measurements:
/// row k is the unnormalized post-measurement population vector
/// p_k(ss) e_k, and the expectation entry is p_k(ss) Omega_mk(tau) from the
/// collapsed state. det(P) is then p_1 ... p_d, the stationary c-scaling.
std::vector<PopulationRecord> records_stationary_collapse(const LindbladModel& model,
                                                          double tau, int m,
                                                          const EvolveOptions& opts = EvolveOptions{});

}  // namespace qwit
