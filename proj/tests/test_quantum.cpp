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

#include <doctest.h>

#include <cmath>
#include <random>

#include "qwit/classical.hpp"
#include "qwit/constants.hpp"
#include "qwit/quantum.hpp"

using namespace qwit;

namespace {

LindbladModel rabi_model(double ej) {
  ComplexMatrix h(2, 2);
  h << 0.0, ej / 2.0, ej / 2.0, 0.0;
  return LindbladModel(HilbertSpace(2), std::move(h));
}

LindbladModel decay_model(double kappa) {
  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;  // |1><2|
  return LindbladModel(HilbertSpace(2), ComplexMatrix::Zero(2, 2), {{std::move(lower), kappa}});
}

// Classical rate dynamics embedded as a Lindblad model: jump |m><n| at K_mn.
LindbladModel rate_lindblad(const RateMatrix& rates) {
  const int d = rates.dim();
  std::vector<CollapseTerm> collapse;
  for (int to = 0; to < d; ++to) {
    for (int from = 0; from < d; ++from) {
      if (to == from || rates.k(to, from) == 0.0) continue;
      ComplexMatrix jump = ComplexMatrix::Zero(d, d);
      jump(to, from) = 1.0;
      collapse.push_back({std::move(jump), rates.k(to, from)});
    }
  }
  return LindbladModel(HilbertSpace(d), ComplexMatrix::Zero(d, d), std::move(collapse));
}

DensityMatrix random_density(const HilbertSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a(space.dim, space.dim);
  for (int r = 0; r < space.dim; ++r) {
    for (int c = 0; c < space.dim; ++c) a(r, c) = Complex(u(rng), u(rng));
  }
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(space, std::move(rho));
}

}  // namespace

TEST_CASE("density matrix validation") {
  const HilbertSpace qubit(2);
  CHECK_THROWS_AS(DensityMatrix(qubit, ComplexMatrix::Identity(2, 2)), std::invalid_argument);
  ComplexMatrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.3, -0.3, 0.5;
  CHECK_THROWS_AS(DensityMatrix(qubit, not_hermitian), std::invalid_argument);
  ComplexMatrix negative(2, 2);
  negative << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix(qubit, negative), std::invalid_argument);
  CHECK_THROWS_AS(HilbertSpace(2, {"a", "a"}), std::invalid_argument);
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(qubit));
}

TEST_CASE("evolve with zero duration returns the input") {
  const LindbladModel model = rabi_model(1.3);
  const DensityMatrix rho = DensityMatrix::basis_state(model.space, 0);
  const DensityMatrix out = evolve(model, rho, 0.0);
  CHECK((out.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("closed two-level evolution follows the Rabi closed form") {
  const double ej = 1.3;
  const LindbladModel model = rabi_model(ej);
  const DensityMatrix rho0 = DensityMatrix::basis_state(model.space, 0);
  for (const double t : {0.3, 1.1, 2.9}) {
    const DensityMatrix rho = evolve(model, rho0, t);
    CHECK(std::abs(population(rho, 1) - std::pow(std::sin(ej * t / 2.0), 2)) < 1e-8);
  }
  // Half period: complete population transfer.
  const double half = constants::pi / ej;
  CHECK(std::abs(population(evolve(model, rho0, half), 1) - 1.0) < 1e-8);
}

TEST_CASE("pure decay reproduces the analytic exponential") {
  const double kappa = 0.8;
  const LindbladModel model = decay_model(kappa);
  const DensityMatrix excited = DensityMatrix::basis_state(model.space, 1);
  for (const double t : {0.2, 1.0, 3.5}) {
    CHECK(std::abs(population(evolve(model, excited, t), 1) - std::exp(-kappa * t)) < 1e-8);
  }
}

TEST_CASE("population basics") {
  const HilbertSpace three(3);
  CHECK(population(DensityMatrix::basis_state(three, 1), 1) == 1.0);
  for (int n = 0; n < 3; ++n) {
    CHECK(population(DensityMatrix::maximally_mixed(three), n) == doctest::Approx(1.0 / 3.0));
  }
  CHECK_THROWS_AS(population(DensityMatrix::maximally_mixed(three), 3), std::invalid_argument);
}

TEST_CASE("dephase zeroes off-diagonals and keeps the diagonal bitwise") {
  const HilbertSpace qubit(2);
  ComplexVector plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix coherent = DensityMatrix::pure(qubit, plus);
  const DensityMatrix dephased = dephase(coherent);
  CHECK(dephased.matrix()(0, 1) == Complex(0, 0));
  CHECK(dephased.matrix()(0, 0).real() == doctest::Approx(0.5));

  const DensityMatrix rho = random_density(qubit, 42);
  const DensityMatrix out = dephase(rho);
  CHECK(out.matrix()(1, 0) == Complex(0, 0));
  CHECK(out.matrix()(0, 0) == rho.matrix()(0, 0));  // bitwise
  CHECK(out.matrix()(1, 1) == rho.matrix()(1, 1));

  const DensityMatrix twice = dephase(out);
  CHECK((twice.matrix() - out.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Markov propagator basics") {
  const LindbladModel model = rabi_model(0.9);
  const Propagator identity = propagator_markov(model, 0.0);
  CHECK((identity.omega - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  const double tau = 1.7;
  const Propagator prop = propagator_markov(model, tau);
  CHECK(std::abs(prop(1, 0) - std::pow(std::sin(0.9 * tau / 2.0), 2)) < 1e-8);
}

TEST_CASE("propagator semigroup property for Markov models") {
  const RateMatrix rates = random_rate_matrix(3, 77);
  const LindbladModel model = rate_lindblad(rates);
  const Propagator p1 = propagator_markov(model, 0.4);
  const Propagator p2 = propagator_markov(model, 0.9);
  const Propagator p12 = propagator_markov(model, 1.3);
  CHECK((p12.omega - p2.omega * p1.omega).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("transport stationary limit: all propagator columns reach the null vector") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(1, 2) = 1.0;
  h(2, 1) = 1.0;
  ComplexMatrix fill = ComplexMatrix::Zero(3, 3);
  fill(1, 0) = 1.0;
  ComplexMatrix drain = ComplexMatrix::Zero(3, 3);
  drain(0, 2) = 1.0;
  const LindbladModel model(HilbertSpace(3), std::move(h), {{fill, 4.0}, {drain, 0.1}});

  const RealVector p_ss = populations(stationary_state(model));
  const Propagator prop = propagator_markov(model, 60.0 / 0.1);
  for (int n = 0; n < 3; ++n) {
    CHECK((prop.omega.col(n) - p_ss).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("two-time correlator at equal times on a diagonal state") {
  const RateMatrix rates = random_rate_matrix(3, 5);
  const LindbladModel model = rate_lindblad(rates);
  const DensityMatrix rho0 = DensityMatrix::maximally_mixed(model.space);
  const double t0 = 0.8;
  const DensityMatrix at_t0 = evolve(model, rho0, t0);
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      const Complex corr = two_time_correlator(model, rho0, m, n, t0, t0);
      const double expected = (m == n) ? population(at_t0, n) : 0.0;
      CHECK(std::abs(corr - Complex(expected, 0)) < 1e-8);
    }
  }
}

TEST_CASE("classical models satisfy the factorized correlation relation") {
  // Diagonal-preserving dynamics with a diagonal start: the quantum
  // regression route must reproduce p_n(t0) Omega_mn(t, t0).
  for (const std::uint64_t seed : {11, 12, 13}) {
    const RateMatrix rates = random_rate_matrix(3, seed);
    const LindbladModel model = rate_lindblad(rates);
    RealVector p0(3);
    p0 << 0.5, 0.3, 0.2;
    ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
    rho.diagonal() = p0.cast<Complex>();
    const DensityMatrix rho0(model.space, std::move(rho));
    const double t0 = 0.7, tau = 0.9;
    const DensityMatrix at_t0 = evolve(model, rho0, t0);
    const Propagator prop = propagator_markov(model, tau);
    for (int m = 0; m < 3; ++m) {
      for (int n = 0; n < 3; ++n) {
        const Complex corr = two_time_correlator(model, rho0, m, n, t0, t0 + tau);
        const double classical = population(at_t0, n) * prop(m, n);
        CHECK(std::abs(corr - Complex(classical, 0)) < 1e-8);
      }
    }
  }
}

TEST_CASE("two-level regression matches the analytic closed form") {
  // For H = (E_J/2) sigma_x from |1>, the correlator <Q_2(t) Q_1(t0)> equals
  // sin(phi) cos(theta) sin(theta + phi), theta = E_J t0/2, phi = E_J tau/2.
  const double ej = 1.0;
  const LindbladModel model = rabi_model(ej);
  const DensityMatrix rho0 = DensityMatrix::basis_state(model.space, 0);
  for (const double t0 : {0.4, constants::pi / 2.0, 2.2}) {
    for (const double tau : {0.3, 1.5}) {
      const double theta = ej * t0 / 2.0, phi = ej * tau / 2.0;
      const Complex corr = two_time_correlator(model, rho0, 1, 0, t0, t0 + tau);
      const double expected = std::sin(phi) * std::cos(theta) * std::sin(theta + phi);
      CHECK(std::abs(corr - Complex(expected, 0)) < 1e-8);
    }
  }
  // Deviation from p_1(t0) Omega_21 is nonzero away from E_J t0 in {0, pi, ...}.
  const double t0 = constants::pi / 2.0, tau = 0.8;
  const Complex corr = two_time_correlator(model, rho0, 1, 0, t0, t0 + tau);
  const double classical =
      population(evolve(model, rho0, t0), 0) * propagator_markov(model, tau)(1, 0);
  CHECK(std::abs(corr - Complex(classical, 0)) > 0.05);
}

TEST_CASE("trace and hermiticity are preserved by evolution") {
  ComplexMatrix h(3, 3);
  h << 0.0, 0.4, Complex(0.0, 0.2), 0.4, 1.0, 0.7, Complex(0.0, -0.2), 0.7, -0.5;
  ComplexMatrix jump = ComplexMatrix::Zero(3, 3);
  jump(0, 2) = 1.0;
  const LindbladModel model(HilbertSpace(3), std::move(h), {{std::move(jump), 0.3}});
  DensityMatrix rho = random_density(model.space, 9);
  for (int step = 0; step < 4; ++step) {
    rho = evolve(model, rho, 0.7);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-9);
    CHECK(hermiticity_defect(rho.matrix()) < 1e-9);
  }
}

TEST_CASE("dephased evolution equals the population-propagator sum") {
  // The classical reference value of the first witness: evolving the
  // dephased state reproduces sum_n p_n(t0) Omega_mn(tau) for any model.
  ComplexMatrix h(2, 2);
  h << 0.3, 0.9, 0.9, -0.3;
  ComplexMatrix jump = ComplexMatrix::Zero(2, 2);
  jump(0, 1) = 1.0;
  const LindbladModel model(HilbertSpace(2), std::move(h), {{std::move(jump), 0.25}});
  const DensityMatrix rho0 = random_density(model.space, 21);
  for (const double t0 : {0.0, 0.6}) {
    for (const double tau : {0.4, 1.3}) {
      const DensityMatrix at_t0 = evolve(model, rho0, t0);
      const RealVector p = populations(at_t0);
      const Propagator prop = propagator_markov(model, tau);
      const DensityMatrix reference = evolve(model, dephase(at_t0), tau);
      for (int m = 0; m < 2; ++m) {
        CHECK(std::abs(population(reference, m) - prop.omega.row(m).dot(p)) < 1e-8);
      }
    }
  }
}

TEST_CASE("regression completeness: summing over outcomes returns p_n") {
  ComplexMatrix h(2, 2);
  h << 0.0, 0.7, 0.7, 0.4;
  ComplexMatrix jump = ComplexMatrix::Zero(2, 2);
  jump(0, 1) = 1.0;
  const LindbladModel model(HilbertSpace(2), std::move(h), {{std::move(jump), 0.15}});
  const DensityMatrix rho0 = random_density(model.space, 31);
  const double t0 = 0.9, t = 1.7;
  const DensityMatrix at_t0 = evolve(model, rho0, t0);
  for (int n = 0; n < 2; ++n) {
    Complex sum = 0.0;
    for (int m = 0; m < 2; ++m) sum += two_time_correlator(model, rho0, m, n, t0, t);
    CHECK(std::abs(sum - Complex(population(at_t0, n), 0)) < 1e-8);
  }
}

TEST_CASE("stationary state is a fixed point with positive occupations") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(1, 2) = 1.0;
  h(2, 1) = 1.0;
  ComplexMatrix fill = ComplexMatrix::Zero(3, 3);
  fill(1, 0) = 1.0;
  ComplexMatrix drain = ComplexMatrix::Zero(3, 3);
  drain(0, 2) = 1.0;
  const LindbladModel model(HilbertSpace(3), std::move(h), {{fill, 4.0}, {drain, 0.1}});
  const DensityMatrix rho_ss = stationary_state(model);
  const DensityMatrix still = evolve(model, rho_ss, 5.0);
  CHECK((still.matrix() - rho_ss.matrix()).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(populations(rho_ss).minCoeff() > 0.0);
}
