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

#include "qwit/quantum.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <stdexcept>

namespace qwit {

HilbertSpace::HilbertSpace(int d) : dim(d) {
  if (d < 2) throw std::invalid_argument("HilbertSpace: dimension must be >= 2");
  labels.reserve(d);
  for (int i = 0; i < d; ++i) labels.push_back(std::to_string(i + 1));
}

HilbertSpace::HilbertSpace(int d, std::vector<std::string> basis_labels)
    : dim(d), labels(std::move(basis_labels)) {
  if (d < 2) throw std::invalid_argument("HilbertSpace: dimension must be >= 2");
  if (static_cast<int>(labels.size()) != d) {
    throw std::invalid_argument("HilbertSpace: need exactly one label per basis state");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw std::invalid_argument("HilbertSpace: duplicate basis label '" + labels[i] + "'");
      }
    }
  }
}

DensityMatrix::DensityMatrix(HilbertSpace space, ComplexMatrix rho, const StateTolerances& tol)
    : space_(std::move(space)), rho_(std::move(rho)) {
  if (rho_.rows() != space_.dim || rho_.cols() != space_.dim) {
    throw std::invalid_argument("DensityMatrix: matrix does not match space dimension");
  }
  if (!all_finite(rho_)) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (hermiticity_defect(rho_) > tol.hermiticity) {
    throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
  }
  if (std::abs(rho_.trace().real() - 1.0) > tol.trace || std::abs(rho_.trace().imag()) > tol.trace) {
    throw std::invalid_argument("DensityMatrix: trace deviates from one");
  }
  if (min_eigenvalue_hermitian(0.5 * (rho_ + rho_.adjoint())) < -tol.positivity) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
  }
}

DensityMatrix DensityMatrix::basis_state(const HilbertSpace& space, int n) {
  if (n < 0 || n >= space.dim) throw std::invalid_argument("basis_state: index out of range");
  ComplexMatrix rho = ComplexMatrix::Zero(space.dim, space.dim);
  rho(n, n) = 1.0;
  return DensityMatrix(space, std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
  ComplexMatrix rho =
      ComplexMatrix::Identity(space.dim, space.dim) / static_cast<double>(space.dim);
  return DensityMatrix(space, std::move(rho));
}

DensityMatrix DensityMatrix::pure(const HilbertSpace& space, const ComplexVector& amplitudes) {
  if (amplitudes.size() != space.dim) {
    throw std::invalid_argument("pure: amplitude vector does not match dimension");
  }
  ComplexVector psi = amplitudes / amplitudes.norm();
  return DensityMatrix(space, psi * psi.adjoint());
}

Projector::Projector(int dim, int index) : dim(dim), index(index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("Projector: index out of range");
}

ComplexMatrix Projector::matrix() const {
  ComplexMatrix q = ComplexMatrix::Zero(dim, dim);
  q(index, index) = 1.0;
  return q;
}

LindbladModel::LindbladModel(HilbertSpace space_in, ComplexMatrix hamiltonian_in,
                             std::vector<CollapseTerm> collapse_in)
    : space(std::move(space_in)),
      hamiltonian(std::move(hamiltonian_in)),
      collapse(std::move(collapse_in)) {
  if (hamiltonian.rows() != space.dim || hamiltonian.cols() != space.dim) {
    throw std::invalid_argument("LindbladModel: Hamiltonian dimension mismatch");
  }
  if (hermiticity_defect(hamiltonian) > 1e-12) {
    throw std::invalid_argument("LindbladModel: Hamiltonian must be Hermitian");
  }
  for (const auto& term : collapse) {
    if (term.op.rows() != space.dim || term.op.cols() != space.dim) {
      throw std::invalid_argument("LindbladModel: collapse operator dimension mismatch");
    }
    if (term.rate < 0) throw std::invalid_argument("LindbladModel: negative collapse rate");
  }
}

Propagator::Propagator(double tau_in, RealMatrix omega_in)
    : tau(tau_in), omega(std::move(omega_in)) {
  if (omega.rows() != omega.cols()) throw std::invalid_argument("Propagator: must be square");
  constexpr double kEntryTol = 1e-8;
  for (Eigen::Index n = 0; n < omega.cols(); ++n) {
    double col_sum = 0.0;
    for (Eigen::Index m = 0; m < omega.rows(); ++m) {
      const double w = omega(m, n);
      if (w < -kEntryTol || w > 1.0 + kEntryTol) {
        throw std::invalid_argument("Propagator: entry outside [0,1]");
      }
      col_sum += w;
    }
    if (std::abs(col_sum - 1.0) > kEntryTol) {
      throw std::invalid_argument("Propagator: column does not sum to one");
    }
  }
}

ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& x) {
  const Complex i_unit(0.0, 1.0);
  ComplexMatrix dx = -i_unit * (model.hamiltonian * x - x * model.hamiltonian);
  for (const auto& term : model.collapse) {
    const ComplexMatrix ldl = term.op.adjoint() * term.op;
    dx += term.rate * (term.op * x * term.op.adjoint() - 0.5 * (ldl * x + x * ldl));
  }
  return dx;
}

ComplexMatrix liouvillian_matrix(const LindbladModel& model) {
  const int d = model.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex i_unit(0.0, 1.0);
  // Column-stacked convention: vec(ABC) = (C^T (x) A) vec(B).
  ComplexMatrix liouv =
      -i_unit * (Eigen::kroneckerProduct(id, model.hamiltonian).eval() -
                 Eigen::kroneckerProduct(model.hamiltonian.transpose(), id).eval());
  for (const auto& term : model.collapse) {
    const ComplexMatrix ldl = term.op.adjoint() * term.op;
    liouv += term.rate *
             (Eigen::kroneckerProduct(term.op.conjugate(), term.op).eval() -
              0.5 * Eigen::kroneckerProduct(id, ldl).eval() -
              0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval());
  }
  return liouv;
}

namespace {
ComplexMatrix evolve_impl(const LindbladModel& model, const ComplexMatrix& x0, double duration,
                          const EvolveOptions& opts) {
  if (duration < 0) throw std::invalid_argument("evolve: duration must be nonnegative");
  if (duration == 0) return x0;
  const int d = model.dim();
  OdeProblem problem;
  problem.derivative = [&model, d](double, const ComplexVector& v) {
    return vectorize(lindblad_rhs(model, unvectorize(v, d, d)));
  };
  problem.initial_state = vectorize(x0);
  problem.t_start = 0.0;
  problem.t_end = duration;
  problem.rel_tol = opts.rel_tol;
  problem.abs_tol = opts.abs_tol;
  problem.method = opts.method;
  problem.fixed_dt = opts.fixed_dt;
  return unvectorize(integrate(problem), d, d);
}
}  // namespace

DensityMatrix evolve(const LindbladModel& model, const DensityMatrix& rho, double duration,
                     const EvolveOptions& opts) {
  if (rho.dim() != model.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  return DensityMatrix(model.space, evolve_impl(model, rho.matrix(), duration, opts));
}

ComplexMatrix evolve_matrix(const LindbladModel& model, const ComplexMatrix& x, double duration,
                            const EvolveOptions& opts) {
  return evolve_impl(model, x, duration, opts);
}

double population(const DensityMatrix& rho, int n) {
  if (n < 0 || n >= rho.dim()) throw std::invalid_argument("population: index out of range");
  const double p = rho.matrix()(n, n).real();
  constexpr double kTol = 1e-10;
  if (p < -kTol || p > 1.0 + kTol) {
    throw std::runtime_error("population: value outside [0,1] beyond tolerance");
  }
  return std::clamp(p, 0.0, 1.0);
}

RealVector populations(const DensityMatrix& rho) {
  RealVector p(rho.dim());
  for (int n = 0; n < rho.dim(); ++n) p[n] = population(rho, n);
  return p;
}

DensityMatrix dephase(const DensityMatrix& rho) {
  ComplexMatrix diag = ComplexMatrix::Zero(rho.dim(), rho.dim());
  diag.diagonal() = rho.matrix().diagonal();
  return DensityMatrix(rho.space(), std::move(diag));
}

Propagator propagator_markov(const LindbladModel& model, double tau, const EvolveOptions& opts) {
  if (tau < 0) throw std::invalid_argument("propagator_markov: tau must be nonnegative");
  const int d = model.dim();
  RealMatrix omega(d, d);
  for (int n = 0; n < d; ++n) {
    const DensityMatrix prepared = DensityMatrix::basis_state(model.space, n);
    omega.col(n) = populations(evolve(model, prepared, tau, opts));
  }
  return Propagator(tau, std::move(omega));
}

Complex two_time_correlator(const LindbladModel& model, const DensityMatrix& rho0, int m, int n,
                            double t0, double t, const EvolveOptions& opts) {
  if (t < t0 || t0 < 0) throw std::invalid_argument("two_time_correlator: need t >= t0 >= 0");
  if (m < 0 || m >= model.dim() || n < 0 || n >= model.dim()) {
    throw std::invalid_argument("two_time_correlator: index out of range");
  }
  const DensityMatrix at_t0 = evolve(model, rho0, t0, opts);
  // Right-multiplying by Q_n keeps only column n; the evolved object is in
  // general non-Hermitian.
  ComplexMatrix x = ComplexMatrix::Zero(model.dim(), model.dim());
  x.col(n) = at_t0.matrix().col(n);
  const ComplexMatrix x_tau = evolve_matrix(model, x, t - t0, opts);
  return x_tau(m, m);
}

DensityMatrix stationary_state(const LindbladModel& model) {
  const int d = model.dim();
  const ComplexMatrix liouv = liouvillian_matrix(model);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(liouv);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("stationary_state: eigensolver failed");
  }
  Eigen::Index best = 0;
  solver.eigenvalues().cwiseAbs().minCoeff(&best);
  ComplexMatrix rho = unvectorize(solver.eigenvectors().col(best), d, d);
  rho = 0.5 * (rho + rho.adjoint().eval());  // remove numerical skew
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw std::runtime_error("stationary_state: traceless null vector");
  rho /= tr;
  return DensityMatrix(model.space, std::move(rho));
}

}  // namespace qwit
