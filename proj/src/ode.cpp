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

#include "qwit/ode.hpp"

#include <algorithm>
#include <cmath>

namespace qwit {

void OdeProblem::validate() const {
  if (!derivative) throw std::invalid_argument("ode: derivative not set");
  if (initial_state.size() == 0) throw std::invalid_argument("ode: empty initial state");
  if (t_end < t_start) throw std::invalid_argument("ode: t_end < t_start");
  if (rel_tol <= 0 || abs_tol <= 0) throw std::invalid_argument("ode: tolerances must be positive");
  if (method == OdeMethod::kFixedRk4 && fixed_dt <= 0) {
    throw std::invalid_argument("ode: fixed_dt must be positive in fixed-step mode");
  }
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
// 4th-order embedded weights.
constexpr double kE1 = 5179.0 / 57600, kE3 = 7571.0 / 16695, kE4 = 393.0 / 640,
                 kE5 = -92097.0 / 339200, kE6 = 187.0 / 2100, kE7 = 1.0 / 40;

double error_norm(const ComplexVector& err, const ComplexVector& y0, const ComplexVector& y1,
                  double rel_tol, double abs_tol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale = abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = std::abs(err[i]) / scale;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

ComplexVector integrate_adaptive(const OdeProblem& p, OdeStats* stats) {
  const double span = p.t_end - p.t_start;
  double t = p.t_start;
  ComplexVector y = p.initial_state;
  ComplexVector k1 = p.derivative(t, y);  // FSAL
  double h = span / 100.0;
  const double h_min = p.min_step * std::max(span, 1e-30);

  std::size_t steps = 0, rejected = 0;
  double last_h = h;
  while (t < p.t_end) {
    if (steps + rejected > p.max_steps) {
      throw OdeFailure("ode: step budget exhausted", t, last_h);
    }
    const double remaining = p.t_end - t;
    if (remaining <= h_min) break;  // within roundoff of the endpoint
    h = std::min(h, remaining);
    if (h < h_min) {
      throw OdeFailure("ode: step size underflow (h=" + std::to_string(h) + ")", t, h);
    }

    const ComplexVector k2 = p.derivative(t + kA21 * h, y + h * (kA21 * k1));
    const ComplexVector k3 = p.derivative(t + 0.3 * h, y + h * (kA31 * k1 + kA32 * k2));
    const ComplexVector k4 = p.derivative(t + 0.8 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const ComplexVector k5 =
        p.derivative(t + 8.0 / 9.0 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const ComplexVector k6 = p.derivative(
        t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
    const ComplexVector y5 = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const ComplexVector k7 = p.derivative(t + h, y5);
    const ComplexVector y4 =
        y + h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

    const double err = error_norm(y5 - y4, y, y5, p.rel_tol, p.abs_tol);
    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;
      ++steps;
      last_h = h;
    } else {
      ++rejected;
    }
    const double factor =
        (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  if (stats) {
    stats->steps = steps;
    stats->rejected_steps = rejected;
    stats->last_step = last_h;
  }
  return y;
}

ComplexVector integrate_fixed_rk4(const OdeProblem& p, OdeStats* stats) {
  const double span = p.t_end - p.t_start;
  const auto n_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / p.fixed_dt - 1e-12)));
  const double h = span / static_cast<double>(n_steps);
  ComplexVector y = p.initial_state;
  double t = p.t_start;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const ComplexVector k1 = p.derivative(t, y);
    const ComplexVector k2 = p.derivative(t + 0.5 * h, y + (0.5 * h) * k1);
    const ComplexVector k3 = p.derivative(t + 0.5 * h, y + (0.5 * h) * k2);
    const ComplexVector k4 = p.derivative(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  if (stats) {
    stats->steps = n_steps;
    stats->rejected_steps = 0;
    stats->last_step = h;
  }
  return y;
}

}  // namespace

ComplexVector integrate(const OdeProblem& problem, OdeStats* stats) {
  problem.validate();
  if (problem.t_end == problem.t_start) {
    if (stats) *stats = {};
    return problem.initial_state;
  }
  if (problem.method == OdeMethod::kFixedRk4) {
    return integrate_fixed_rk4(problem, stats);
  }
  return integrate_adaptive(problem, stats);
}

}  // namespace qwit
