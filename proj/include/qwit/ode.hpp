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

#include <functional>
#include <stdexcept>
#include <string>

#include "qwit/linalg.hpp"

namespace qwit {

/// Right-hand side of dy/dt = f(t, y) on complex state vectors.
using OdeDerivative = std::function<ComplexVector(double, const ComplexVector&)>;

enum class OdeMethod {
  kAdaptiveRk45,  // Dormand-Prince embedded 4(5) pair
  kFixedRk4,      // classic fixed-step RK4, bitwise reproducible
};

struct OdeProblem {
  OdeDerivative derivative;
  ComplexVector initial_state;
  double t_start = 0.0;
  double t_end = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  OdeMethod method = OdeMethod::kAdaptiveRk45;
  double fixed_dt = 0.0;        // required for kFixedRk4
  double min_step = 1e-14;      // relative to the span
  std::size_t max_steps = 50'000'000;

  void validate() const;
};

struct OdeStats {
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  double last_step = 0.0;
};

/// Raised when the adaptive controller underflows the minimum step or the
/// step budget runs out; carries how far the integration got.
class OdeFailure : public std::runtime_error {
 public:
  OdeFailure(const std::string& what, double time_reached, double last_step)
      : std::runtime_error(what), time_reached(time_reached), last_step(last_step) {}
  double time_reached;
  double last_step;
};

/// Integrates the problem to t_end and returns the final state.
ComplexVector integrate(const OdeProblem& problem, OdeStats* stats = nullptr);

}  // namespace qwit
