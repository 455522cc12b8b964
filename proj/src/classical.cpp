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

#include "qwit/classical.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qwit {

RateMatrix::RateMatrix(RealMatrix generator) : k(std::move(generator)) {
  if (k.rows() != k.cols() || k.rows() < 2) {
    throw std::invalid_argument("RateMatrix: generator must be square with d >= 2");
  }
  for (Eigen::Index n = 0; n < k.cols(); ++n) {
    double col_sum = 0.0;
    for (Eigen::Index m = 0; m < k.rows(); ++m) {
      if (m != n && k(m, n) < 0) {
        throw std::invalid_argument("RateMatrix: negative off-diagonal rate");
      }
      col_sum += k(m, n);
    }
    if (std::abs(col_sum) > 1e-12) {
      throw std::invalid_argument("RateMatrix: column sum differs from zero");
    }
  }
}

RealVector classical_evolve(const RateMatrix& rates, const RealVector& p0, double t) {
  if (p0.size() != rates.dim()) throw std::invalid_argument("classical_evolve: size mismatch");
  if (t < 0) throw std::invalid_argument("classical_evolve: negative time");
  return expm(RealMatrix(rates.k * t)) * p0;
}

RealMatrix classical_propagator(const RateMatrix& rates, double tau) {
  if (tau < 0) throw std::invalid_argument("classical_propagator: negative time");
  return expm(RealMatrix(rates.k * tau));
}

RealVector classical_stationary(const RateMatrix& rates) {
  // Eigenvector of the smallest-magnitude eigenvalue of K.
  Eigen::EigenSolver<RealMatrix> solver(rates.k);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("classical_stationary: eigensolver failed");
  }
  Eigen::Index best = 0;
  solver.eigenvalues().cwiseAbs().minCoeff(&best);
  RealVector p = solver.eigenvectors().col(best).real();
  const double total = p.sum();
  if (std::abs(total) < 1e-12) {
    throw std::runtime_error("classical_stationary: degenerate null vector");
  }
  p /= total;
  return p;
}

RateMatrix random_rate_matrix(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_rate_matrix: d must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  RealMatrix k = RealMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      if (m == n) continue;
      // uniform in (0, 1]: flip the half-open interval
      k(m, n) = 1.0 - uniform(rng);
    }
    k(n, n) = -k.col(n).sum();
  }
  return RateMatrix(std::move(k));
}

HiddenStateModel::HiddenStateModel(int visible, int hidden, RateMatrix joint_rates,
                                   RealVector initial_joint)
    : visible_dim(visible),
      hidden_dim(hidden),
      joint(std::move(joint_rates)),
      initial(std::move(initial_joint)) {
  if (visible_dim < 2 || hidden_dim < 1) {
    throw std::invalid_argument("HiddenStateModel: need visible >= 2 and hidden >= 1");
  }
  if (joint.dim() != visible_dim * hidden_dim) {
    throw std::invalid_argument("HiddenStateModel: joint generator dimension mismatch");
  }
  if (initial.size() != joint.dim()) {
    throw std::invalid_argument("HiddenStateModel: initial distribution dimension mismatch");
  }
  if (initial.minCoeff() < -1e-14 || std::abs(initial.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("HiddenStateModel: initial joint is not a distribution");
  }
}

RealVector HiddenStateModel::joint_at(double t) const {
  return classical_evolve(joint, initial, t);
}

RealVector HiddenStateModel::visible_populations(const RealVector& joint_dist) const {
  RealVector p = RealVector::Zero(visible_dim);
  for (int h = 0; h < hidden_dim; ++h) {
    for (int v = 0; v < visible_dim; ++v) p[v] += joint_dist[v + visible_dim * h];
  }
  return p;
}

RealVector HiddenStateModel::visible_at(double t) const {
  return visible_populations(joint_at(t));
}

double hidden_propagator(const HiddenStateModel& model, int n, int m, double t0, double tau,
                         bool correlation_aware) {
  if (n < 0 || n >= model.visible_dim || m < 0 || m >= model.visible_dim) {
    throw std::invalid_argument("hidden_propagator: visible index out of range");
  }
  if (t0 < 0 || tau < 0) throw std::invalid_argument("hidden_propagator: negative time");
  const RealVector joint_t0 = model.joint_at(t0);
  const double p_n = model.visible_populations(joint_t0)[n];
  if (p_n <= 1e-10) {
    throw std::runtime_error("hidden_propagator: conditional state undefined, p_n(t0) <= 1e-10");
  }
  RealVector conditioned = RealVector::Zero(model.joint.dim());
  if (correlation_aware) {
    // Bayes update on the joint distribution; the hidden marginal given the
    // outcome n is retained.
    for (int h = 0; h < model.hidden_dim; ++h) {
      const int idx = n + model.visible_dim * h;
      conditioned[idx] = joint_t0[idx] / p_n;
    }
  } else {
    // Re-prepare visible state n with the hidden state drawn from its t = 0
    // distribution, ignoring correlations accumulated up to t0.
    RealVector hidden0 = RealVector::Zero(model.hidden_dim);
    for (int h = 0; h < model.hidden_dim; ++h) {
      for (int v = 0; v < model.visible_dim; ++v) {
        hidden0[h] += model.initial[v + model.visible_dim * h];
      }
    }
    for (int h = 0; h < model.hidden_dim; ++h) {
      conditioned[n + model.visible_dim * h] = hidden0[h];
    }
  }
  const RealVector evolved = classical_evolve(model.joint, conditioned, tau);
  return model.visible_populations(evolved)[m];
}

HiddenStateModel witness_caveat_model() {
  // Two visible states, two hidden branches. In branch A the visible state
  // flips 1 -> 2 at rate 3.0 and back at 0.3; branch B is mirrored. Hidden
  // branches exchange slowly (0.05) and start strongly biased, so the
  // visible marginal stays non-Markovian over several time units.
  const int dv = 2, dh = 2;
  RealMatrix k = RealMatrix::Zero(4, 4);
  auto add = [&k](int to, int from, double rate) {
    k(to, from) += rate;
    k(from, from) -= rate;
  };
  add(1, 0, 3.0);   // branch A: 1 -> 2 fast
  add(0, 1, 0.3);   //           2 -> 1 slow
  add(3, 2, 0.3);   // branch B: 1 -> 2 slow
  add(2, 3, 3.0);   //           2 -> 1 fast
  for (int v = 0; v < dv; ++v) {
    add(v + 2, v, 0.05);  // A -> B
    add(v, v + 2, 0.05);  // B -> A
  }
  RealVector p0 = RealVector::Zero(4);
  p0[0] = 0.95;  // visible 1, hidden A
  p0[2] = 0.05;  // visible 1, hidden B
  return HiddenStateModel(dv, dh, RateMatrix(std::move(k)), std::move(p0));
}

}  // namespace qwit
