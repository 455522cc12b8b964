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

#include <cstdint>

#include "qwit/linalg.hpp"

namespace qwit {

/// Generator of a continuous-time Markov chain: nonnegative off-diagonal
/// rates, columns summing to zero (probability conservation).
struct RateMatrix {
  RealMatrix k;

  explicit RateMatrix(RealMatrix generator);
  int dim() const { return static_cast<int>(k.rows()); }
};

/// p(t) = exp(K t) p0.
RealVector classical_evolve(const RateMatrix& rates, const RealVector& p0, double t);

/// Classical propagator matrix exp(K tau); columns are conditional
/// distributions.
RealMatrix classical_propagator(const RateMatrix& rates, double tau);

/// Stationary distribution (null vector of K, normalized).
RealVector classical_stationary(const RateMatrix& rates);

/// Deterministic random generator with off-diagonal rates uniform in (0,1].
RateMatrix random_rate_matrix(int d, std::uint64_t seed);

/// Classical Markov dynamics on a joint (visible x hidden) space whose
/// visible marginal is non-Markovian. Joint index = visible + d*hidden.
struct HiddenStateModel {
  int visible_dim = 0;
  int hidden_dim = 0;
  RateMatrix joint;
  RealVector initial;  // joint distribution at t = 0

  HiddenStateModel(int visible_dim, int hidden_dim, RateMatrix joint_rates,
                   RealVector initial_joint);

  RealVector joint_at(double t) const;
  RealVector visible_populations(const RealVector& joint_dist) const;
  RealVector visible_at(double t) const;
};

/// Conditional probability of visible state m at t0+tau given visible n at
/// t0. In correlation-aware mode the hidden marginal is Bayes-conditioned on
/// the outcome n and retained; in naive mode the hidden state is reset to its
/// t = 0 distribution (an experimenter re-preparing without the bath).
/// Requires p_n(t0) > 1e-10.
double hidden_propagator(const HiddenStateModel& model, int n, int m, double t0, double tau,
                         bool correlation_aware);

/// The shipped non-Markovian counterexample: 2 visible x 2 hidden states,
/// visible flip rates contrasted 10x between hidden branches, slow hidden
/// relaxation from a strongly biased start.
HiddenStateModel witness_caveat_model();

}  // namespace qwit
