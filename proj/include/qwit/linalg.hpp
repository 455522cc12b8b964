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

#include <Eigen/Dense>
#include <complex>

namespace qwit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// True if every entry is finite (no NaN/Inf).
bool all_finite(const ComplexMatrix& m);
bool all_finite(const RealMatrix& m);

/// Dimension-checked dense product. Throws std::invalid_argument on a
/// column/row mismatch instead of hitting an Eigen assert.
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Determinant via partially pivoted LU (sign from permutation parity).
/// Requires a square input.
Complex determinant(const ComplexMatrix& m);
double determinant(const RealMatrix& m);

/// Matrix exponential (scaling-and-squaring with a Pade core).
ComplexMatrix expm(const ComplexMatrix& m);
RealMatrix expm(const RealMatrix& m);

/// Max-norm of the anti-Hermitian part, ||m - m^dagger||_max.
double hermiticity_defect(const ComplexMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix (used for positivity checks).
double min_eigenvalue_hermitian(const ComplexMatrix& m);

/// Column-stacked vectorization and its inverse.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace qwit
