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

#include "qwit/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwit {

double WitnessResult::component(const std::string& name) const {
  for (const auto& [key, val] : components) {
    if (key == name) return val;
  }
  throw std::out_of_range("WitnessResult: no component named '" + name + "'");
}

bool WitnessResult::has_component(const std::string& name) const {
  return std::any_of(components.begin(), components.end(),
                     [&name](const auto& kv) { return kv.first == name; });
}

WitnessResult witness_wqq(Complex correlator, double p_n, double omega_mn, double threshold) {
  WitnessResult result;
  result.value = std::abs(correlator - Complex(p_n * omega_mn, 0.0));
  result.threshold = threshold;
  result.detected = result.value > threshold;
  result.components = {{"correlator_re", correlator.real()},
                       {"correlator_im", correlator.imag()},
                       {"classical", p_n * omega_mn}};
  return result;
}

WitnessResult witness_wq(double expectation, const RealVector& populations,
                         const RealVector& propagator_terms, double threshold) {
  if (populations.size() != propagator_terms.size() || populations.size() == 0) {
    throw std::invalid_argument("witness_wq: populations and propagator entries must align");
  }
  const double classical_sum = populations.dot(propagator_terms);
  WitnessResult result;
  result.value = std::abs(expectation - classical_sum);
  result.threshold = threshold;
  result.detected = result.value > threshold;
  result.components = {{"expectation", expectation}, {"classical_sum", classical_sum}};
  return result;
}

PartialWitnessResult witness_wq_partial(double expectation, std::span<const double> terms,
                                        double threshold) {
  PartialWitnessResult result;
  result.expectation = expectation;
  for (const double term : terms) {
    if (term < 0) throw std::invalid_argument("witness_wq_partial: terms must be nonnegative");
    result.running_sum += term;
    ++result.terms_consumed;
    if (result.running_sum > expectation + threshold) {
      result.detected = true;
      break;
    }
  }
  return result;
}

namespace {
// Product of row norms: Hadamard's bound on |det|, used as the conditioning
// scale for singularity thresholds.
double hadamard_bound(const RealMatrix& m) {
  double bound = 1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) bound *= m.row(r).norm();
  return bound;
}
}  // namespace

PropagatorSolution solve_propagator_vector(const RealMatrix& p, const RealVector& q,
                                           double singular_tol) {
  if (p.rows() != p.cols()) throw std::invalid_argument("solve_propagator_vector: P must be square");
  if (q.size() != p.rows()) throw std::invalid_argument("solve_propagator_vector: size mismatch");
  const int d = static_cast<int>(p.rows());

  PropagatorSolution solution;
  solution.det_p = determinant(p);
  solution.scale = hadamard_bound(p);
  const double floor = singular_tol * std::max(solution.scale, 1e-300);
  if (std::abs(solution.det_p) <= floor) {
    throw SingularSystemError("solve_propagator_vector: undetermined propagator, |det P| = " +
                                  std::to_string(std::abs(solution.det_p)) +
                                  " below singularity floor " + std::to_string(floor),
                              std::abs(solution.det_p));
  }

  solution.omega_cramer.resize(d);
  for (int n = 0; n < d; ++n) {
    RealMatrix replaced = p;
    replaced.col(n) = q;
    solution.omega_cramer[n] = determinant(replaced) / solution.det_p;
  }
  solution.omega = p.partialPivLu().solve(q);

  const double disagreement = (solution.omega - solution.omega_cramer).cwiseAbs().maxCoeff();
  if (disagreement > 1e-8) {
    throw std::runtime_error(
        "solve_propagator_vector: Cramer and LU routes disagree by " +
        std::to_string(disagreement) + " (|det P| = " + std::to_string(std::abs(solution.det_p)) +
        ", scale = " + std::to_string(solution.scale) + "); system too ill-conditioned");
  }
  return solution;
}

TimeDomainSet TimeDomainSet::arithmetic(int label, double base, double tau, int count,
                                        double offset) {
  TimeDomainSet set;
  set.label = label;
  set.tau = tau;
  set.start_times.reserve(count);
  for (int k = 1; k <= count; ++k) {
    set.start_times.push_back((static_cast<double>(k) + offset) * base);
  }
  set.validate();
  return set;
}

void TimeDomainSet::validate() const {
  if (start_times.empty()) throw std::invalid_argument("TimeDomainSet: no time pairs");
  if (tau < 0) throw std::invalid_argument("TimeDomainSet: negative tau");
  for (std::size_t a = 0; a < start_times.size(); ++a) {
    if (start_times[a] < 0) throw std::invalid_argument("TimeDomainSet: negative start time");
    for (std::size_t b = a + 1; b < start_times.size(); ++b) {
      if (start_times[a] == start_times[b]) {
        throw std::invalid_argument("TimeDomainSet: duplicate time pair");
      }
    }
  }
}

namespace {
struct SetMatrices {
  RealMatrix p;
  RealVector q;
};

SetMatrices assemble(std::span<const PopulationRecord> records) {
  const int d = static_cast<int>(records.size());
  if (d < 2) throw std::invalid_argument("witness_womega: need at least two records per set");
  SetMatrices out;
  out.p.resize(d, d);
  out.q.resize(d);
  const double tau = records[0].t - records[0].t0;
  for (int k = 0; k < d; ++k) {
    if (records[k].populations.size() != d) {
      throw std::invalid_argument(
          "witness_womega: record count must equal the population dimension");
    }
    if (std::abs((records[k].t - records[k].t0) - tau) > 1e-9 * std::max(1.0, std::abs(tau))) {
      throw std::invalid_argument("witness_womega: records do not share a common tau");
    }
    out.p.row(k) = records[k].populations.transpose();
    out.q[k] = records[k].expectation;
  }
  return out;
}
}  // namespace

WitnessResult witness_womega(std::span<const PopulationRecord> set_j,
                             std::span<const PopulationRecord> set_jp, int n, double threshold,
                             double singular_tol) {
  if (set_j.size() != set_jp.size()) {
    throw std::invalid_argument("witness_womega: sets must have the same size");
  }
  const auto a = assemble(set_j);
  const auto b = assemble(set_jp);
  const double tau_a = set_j[0].t - set_j[0].t0;
  const double tau_b = set_jp[0].t - set_jp[0].t0;
  if (std::abs(tau_a - tau_b) > 1e-9 * std::max(1.0, std::abs(tau_a))) {
    throw std::invalid_argument("witness_womega: sets must share tau");
  }
  const int d = static_cast<int>(set_j.size());
  if (n < 0 || n >= d) throw std::invalid_argument("witness_womega: column index out of range");

  const double det_a = determinant(a.p);
  const double det_b = determinant(b.p);
  RealMatrix replaced_a = a.p;
  replaced_a.col(n) = a.q;
  RealMatrix replaced_b = b.p;
  replaced_b.col(n) = b.q;
  const double det_an = determinant(replaced_a);
  const double det_bn = determinant(replaced_b);

  const double floor_a = singular_tol * std::max(hadamard_bound(a.p), 1e-300);
  const double floor_b = singular_tol * std::max(hadamard_bound(b.p), 1e-300);

  WitnessResult result;
  result.value = std::abs(det_an * det_b - det_bn * det_a);
  result.conclusive = std::abs(det_a) > floor_a && std::abs(det_b) > floor_b;
  const double conditioning = std::abs(det_a * det_b);
  result.threshold = threshold * std::max(conditioning, 1e-300);
  result.detected = result.conclusive && result.value > result.threshold;
  result.components = {
      {"det_p", det_a},
      {"det_p_prime", det_b},
      {"det_p_n", det_an},
      {"det_p_prime_n", det_bn},
      {"normalized", result.conclusive ? result.value / conditioning : 0.0},
  };
  return result;
}

std::vector<PopulationRecord> records_from_trajectory(const LindbladModel& model,
                                                      const DensityMatrix& rho0,
                                                      const TimeDomainSet& set, int m,
                                                      const EvolveOptions& opts) {
  set.validate();
  std::vector<PopulationRecord> records;
  records.reserve(set.start_times.size());
  for (const double t0 : set.start_times) {
    const DensityMatrix at_t0 = evolve(model, rho0, t0, opts);
    const DensityMatrix at_t = evolve(model, at_t0, set.tau, opts);
    PopulationRecord record;
    record.t0 = t0;
    record.t = t0 + set.tau;
    record.populations = populations(at_t0);
    record.expectation = population(at_t, m);
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<PopulationRecord> records_stationary_collapse(const LindbladModel& model, double tau,
                                                          int m, const EvolveOptions& opts) {
  const int d = model.dim();
  const RealVector p_ss = populations(stationary_state(model));
  std::vector<PopulationRecord> records;
  records.reserve(d);
  for (int k = 0; k < d; ++k) {
    PopulationRecord record;
    record.t0 = 0.0;
    record.t = tau;
    record.populations = RealVector::Zero(d);
    record.populations[k] = p_ss[k];
    if (p_ss[k] > 0.0) {
      const DensityMatrix collapsed = DensityMatrix::basis_state(model.space, k);
      record.expectation = p_ss[k] * population(evolve(model, collapsed, tau, opts), m);
    } else {
      record.expectation = 0.0;
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace qwit
