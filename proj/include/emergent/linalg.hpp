// Copyright 2026 The emergent-space Authors
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

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "emergent/error.hpp"

namespace emergent {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline void require_square(const CMatrix& a, const char* what = "matrix") {
  if (a.rows() != a.cols()) {
    throw Error(Errc::DimMismatch, std::string(what) + " is " +
                                       std::to_string(a.rows()) + "x" +
                                       std::to_string(a.cols()));
  }
}

inline void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

inline double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline CMatrix adjoint(const CMatrix& a) { return a.adjoint(); }

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  require_square(a);
  require_same_dim(a, b);
  return a * b - b * a;
}

inline double hermitian_defect(const CMatrix& a) {
  require_square(a);
  return max_abs(a - a.adjoint());
}

inline bool is_self_adjoint(const CMatrix& a, double tol = 1e-10) {
  return hermitian_defect(a) <= tol;
}

inline CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

/// Standard Pauli matrices; k in {1,2,3}.
inline CMatrix pauli(int k) {
  CMatrix m(2, 2);
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw Error(Errc::BadAxis, "Pauli index " + std::to_string(k));
  }
  return m;
}

inline CMatrix outer(const CVector& u, const CVector& v) {
  return u * v.adjoint();
}

/// Eigen-decomposition of the Hermitian part of a; eigenvalues ascending.
inline Eigen::SelfAdjointEigenSolver<CMatrix> hermitian_eig(const CMatrix& a) {
  require_square(a);
  CMatrix h = 0.5 * (a + a.adjoint());
  return Eigen::SelfAdjointEigenSolver<CMatrix>(h);
}

}  // namespace emergent
