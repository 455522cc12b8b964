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

#include "qwit/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace qwit {

bool all_finite(const ComplexMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

bool all_finite(const RealMatrix& m) { return m.allFinite(); }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul: inner dimensions differ (" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + ")");
  }
  return a * b;
}

namespace {
template <class Matrix>
typename Matrix::Scalar det_lu(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("determinant: matrix must be square");
  }
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

template <class Matrix>
Matrix expm_impl(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  return m.exp();
}
}  // namespace

Complex determinant(const ComplexMatrix& m) { return det_lu(m); }
double determinant(const RealMatrix& m) { return det_lu(m); }

ComplexMatrix expm(const ComplexMatrix& m) { return expm_impl(m); }
RealMatrix expm(const RealMatrix& m) { return expm_impl(m); }

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("min_eigenvalue_hermitian: eigensolver failed");
  }
  return solver.eigenvalues().minCoeff();
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw std::invalid_argument("unvectorize: size mismatch");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

}  // namespace qwit
