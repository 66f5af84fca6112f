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

#include <algorithm>
#include <cmath>
#include <vector>

#include "emergent/linalg.hpp"

namespace emergent {

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kSpanTolerance = 1e-10;

/// Positive normalized functional realized by a density matrix:
/// omega(A) = trace(rho A).
class AlgState {
 public:
  explicit AlgState(CMatrix density) : rho_(std::move(density)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
      throw Error(Errc::NotAState, "density matrix must be square and non-empty");
    }
    const double herm = hermitian_defect(rho_);
    if (herm > kStateTolerance) {
      throw Error(Errc::NotAState, "not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const double min_eig = hermitian_eig(rho_).eigenvalues().minCoeff();
    if (min_eig < -kStateTolerance) {
      throw Error(Errc::NotAState, "negative eigenvalue " + std::to_string(min_eig));
    }
    const Complex tr = rho_.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > kStateTolerance) {
      throw Error(Errc::NotAState, "trace " + std::to_string(tr.real()));
    }
  }

  static AlgState pure(const CVector& psi) {
    return AlgState(outer(psi, psi) / psi.squaredNorm());
  }

  static AlgState maximally_mixed(Eigen::Index d) {
    return AlgState(identity(d) / static_cast<double>(d));
  }

  Eigen::Index dim() const noexcept { return rho_.rows(); }
  const CMatrix& density() const noexcept { return rho_; }

  Complex operator()(const CMatrix& a) const {
    require_same_dim(rho_, a);
    // trace(rho a) without forming the product.
    return (rho_.transpose().cwiseProduct(a)).sum();
  }

 private:
  CMatrix rho_;
};

/// Finite-dimensional *-algebra given by a spanning basis of d x d matrices.
class StarAlgebra {
 public:
  /// Completes the generators (plus the identity) to the smallest span closed
  /// under adjoint and product. Supplied generators are kept verbatim where
  /// independent; closure additions are stored orthonormalized.
  static StarAlgebra generated_by(const std::vector<CMatrix>& generators,
                                  Eigen::Index dim = -1) {
    if (dim < 0) {
      if (generators.empty()) {
        throw Error(Errc::InvalidArgument, "no generators and no dimension");
      }
      dim = generators.front().rows();
    }
    StarAlgebra alg(dim);
    for (const auto& g : generators) {
      require_square(g, "generator");
      if (g.rows() != dim) throw Error(Errc::DimMismatch, "generator dimension");
      alg.try_add(g, false);
    }
    alg.try_add(identity(dim), false);
    const auto cap = static_cast<std::size_t>(dim * dim);
    for (std::size_t k = 0; k < alg.basis_.size() && alg.basis_.size() < cap; ++k) {
      const CMatrix bk = alg.basis_[k];
      alg.try_add(bk.adjoint(), true);
      for (std::size_t i = 0; i <= k && alg.basis_.size() < cap; ++i) {
        const CMatrix bi = alg.basis_[i];
        alg.try_add(bi * bk, true);
        alg.try_add(bk * bi, true);
      }
    }
    return alg;
  }

  /// Uses the basis as given; it must be independent, contain the identity
  /// in its span, and be closed under adjoint and product.
  static StarAlgebra from_basis(const std::vector<CMatrix>& basis) {
    if (basis.empty()) throw Error(Errc::InvalidArgument, "empty basis");
    StarAlgebra alg(basis.front().rows());
    for (const auto& b : basis) {
      require_square(b, "basis element");
      if (b.rows() != alg.dim_) throw Error(Errc::DimMismatch, "basis dimension");
      if (!alg.try_add(b, false)) {
        throw Error(Errc::InvalidArgument, "basis is linearly dependent");
      }
    }
    if (!alg.contains(identity(alg.dim_))) {
      throw Error(Errc::NonClosedAlgebra, "identity is not in the span");
    }
    for (const auto& a : alg.basis_) {
      if (!alg.contains(a.adjoint())) {
        throw Error(Errc::NonClosedAlgebra, "span is not closed under adjoint");
      }
      for (const auto& b : alg.basis_) {
        if (!alg.contains(a * b)) {
          throw Error(Errc::NonClosedAlgebra, "span is not closed under product");
        }
      }
    }
    return alg;
  }

  /// Full matrix algebra M_d with the matrix-unit basis E_ij (row-major).
  static StarAlgebra full_matrix_algebra(Eigen::Index d) {
    std::vector<CMatrix> basis;
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        CMatrix e = CMatrix::Zero(d, d);
        e(i, j) = 1.0;
        basis.push_back(e);
      }
    }
    return from_basis(basis);
  }

  Eigen::Index dim() const noexcept { return dim_; }
  const std::vector<CMatrix>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }

  /// Distance from m to the span, relative to the size of m.
  double span_residual(const CMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw Error(Errc::DimMismatch, "matrix dimension");
    }
    CVector v = vec(m);
    const double scale = std::max(1.0, v.norm());
    if (ortho_.cols() == 0) return v.norm() / scale;
    CVector r = v - ortho_ * (ortho_.adjoint() * v);
    return r.norm() / scale;
  }

  bool contains(const CMatrix& m, double tol = kSpanTolerance) const {
    return span_residual(m) <= tol;
  }

  /// Coordinates of m in the stored basis (least squares).
  CVector coefficients(const CMatrix& m) const {
    CMatrix cols(dim_ * dim_, static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      cols.col(static_cast<Eigen::Index>(k)) = vec(basis_[k]);
    }
    return cols.colPivHouseholderQr().solve(vec(m));
  }

 private:
  explicit StarAlgebra(Eigen::Index dim) : dim_(dim), ortho_(dim * dim, 0) {}

  static CVector vec(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
  }

  // Returns true when m was independent of the current span and got added.
  bool try_add(const CMatrix& m, bool store_orthonormal) {
    CVector v = vec(m);
    const double norm = v.norm();
    if (norm == 0.0) return false;
    CVector r = v;
    // Two passes of Gram-Schmidt keep the basis numerically orthonormal.
    for (int pass = 0; pass < 2 && ortho_.cols() > 0; ++pass) {
      r -= ortho_ * (ortho_.adjoint() * r);
    }
    if (r.norm() <= kSpanTolerance * std::max(1.0, norm)) return false;
    r /= r.norm();
    ortho_.conservativeResize(Eigen::NoChange, ortho_.cols() + 1);
    ortho_.col(ortho_.cols() - 1) = r;
    if (store_orthonormal) {
      basis_.push_back(Eigen::Map<const CMatrix>(r.data(), dim_, dim_));
    } else {
      basis_.push_back(m);
    }
    return true;
  }

  Eigen::Index dim_;
  std::vector<CMatrix> basis_;
  CMatrix ortho_;  // columns: orthonormal vectorized span
};

/// Cyclic representation built from an algebra and a state.
///
/// The quotient space A / N_omega is realized through the eigenvectors of
/// the Gram matrix G_ij = omega(b_i^dag b_j) whose eigenvalues exceed the
/// relative rank cut. Each retained eigenpair (lambda, v) yields the algebra
/// element E = sum_i v_i / sqrt(lambda) b_i, and these classes are
/// orthonormal. Representation matrices are pi(x)_ab = omega(E_a^dag x E_b).
class GnsRepresentation {
 public:
  GnsRepresentation(const StarAlgebra& algebra, const AlgState& state,
                    double rank_tolerance)
      : algebra_(algebra), state_(state) {
    if (algebra.dim() != state.dim()) {
      throw Error(Errc::DimMismatch, "algebra and state dimensions differ");
    }
    const auto& b = algebra.basis();
    const auto k = static_cast<Eigen::Index>(b.size());
    gram_.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        gram_(i, j) = state(b[static_cast<std::size_t>(i)].adjoint() *
                            b[static_cast<std::size_t>(j)]);
      }
    }
    auto eig = hermitian_eig(gram_);
    gram_eigenvalues_ = eig.eigenvalues();
    const double top = gram_eigenvalues_.maxCoeff();
    const double cut = rank_tolerance * std::max(top, 0.0);
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      if (gram_eigenvalues_(i) > cut) kept.push_back(i);
    }
    const auto n = static_cast<Eigen::Index>(kept.size());
    coefficients_.resize(k, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      const auto col = kept[static_cast<std::size_t>(a)];
      coefficients_.col(a) =
          eig.eigenvectors().col(col) / std::sqrt(gram_eigenvalues_(col));
    }
    for (Eigen::Index a = 0; a < n; ++a) {
      CMatrix e = CMatrix::Zero(algebra.dim(), algebra.dim());
      for (Eigen::Index i = 0; i < k; ++i) {
        e += coefficients_(i, a) * b[static_cast<std::size_t>(i)];
      }
      elements_.push_back(std::move(e));
    }
    omega_.resize(n);
    for (Eigen::Index a = 0; a < n; ++a) {
      omega_(a) = std::conj(state_(elements_[static_cast<std::size_t>(a)]));
    }
  }

  const StarAlgebra& algebra() const noexcept { return algebra_; }
  const AlgState& state() const noexcept { return state_; }
  const CMatrix& gram() const noexcept { return gram_; }
  const RVector& gram_eigenvalues() const noexcept { return gram_eigenvalues_; }
  Eigen::Index quotient_dim() const noexcept { return omega_.size(); }
  /// Column a holds the basis coefficients of the a-th orthonormal class.
  const CMatrix& quotient_basis() const noexcept { return coefficients_; }
  const CVector& omega_vector() const noexcept { return omega_; }

  CMatrix pi(const CMatrix& x) const {
    if (!algebra_.contains(x, 1e-8)) {
      throw Error(Errc::InvalidArgument, "element is not in the algebra");
    }
    const auto n = quotient_dim();
    CMatrix out(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      const CMatrix left = elements_[static_cast<std::size_t>(a)].adjoint() * x;
      for (Eigen::Index c = 0; c < n; ++c) {
        out(a, c) = state_(left * elements_[static_cast<std::size_t>(c)]);
      }
    }
    return out;
  }

  /// The class [x] = pi(x) Omega.
  CVector vector_of(const CMatrix& x) const { return pi(x) * omega_; }

  Complex expectation(const CMatrix& x) const {
    return omega_.dot(pi(x) * omega_);
  }

  // Diagnostics over the algebra basis.

  double reproduction_residual() const {
    double worst = 0.0;
    for (const auto& b : algebra_.basis()) {
      worst = std::max(worst, std::abs(state_(b) - expectation(b)));
    }
    return worst;
  }

  double homomorphism_residual() const {
    const auto& basis = algebra_.basis();
    std::vector<CMatrix> images;
    for (const auto& b : basis) images.push_back(pi(b));
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      worst = std::max(worst, max_abs(pi(basis[i].adjoint()) - images[i].adjoint()));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        worst = std::max(worst,
                         max_abs(pi(basis[i] * basis[j]) - images[i] * images[j]));
      }
    }
    return worst;
  }

  double omega_norm_error() const { return std::abs(omega_.squaredNorm() - 1.0); }

  /// Rank of {pi(b_i) Omega}; equals quotient_dim for a cyclic vector.
  Eigen::Index cyclic_rank(double tol = 1e-9) const {
    const auto n = quotient_dim();
    CMatrix vs(n, static_cast<Eigen::Index>(algebra_.size()));
    for (std::size_t i = 0; i < algebra_.size(); ++i) {
      vs.col(static_cast<Eigen::Index>(i)) = vector_of(algebra_.basis()[i]);
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(vs);
    qr.setThreshold(tol);
    return qr.rank();
  }

 private:
  StarAlgebra algebra_;
  AlgState state_;
  CMatrix gram_;
  RVector gram_eigenvalues_;
  CMatrix coefficients_;
  std::vector<CMatrix> elements_;
  CVector omega_;
};

inline constexpr double kDefaultRankTolerance = 1e-9;

inline GnsRepresentation gns(const StarAlgebra& algebra, const AlgState& state,
                             double rank_tolerance = kDefaultRankTolerance) {
  return GnsRepresentation(algebra, state, rank_tolerance);
}

/// Truncated ladder operators a|n> = sqrt(n)|n-1> on N levels, with the
/// ground-state functional and its cyclic representation.
struct OscillatorModel {
  int levels = 0;
  CMatrix annihilation;
  CMatrix creation;
  StarAlgebra algebra;
  AlgState ground;
  GnsRepresentation representation;

  /// pi(a^dag)^n Omega / sqrt(n!) for n = 0..count-1, as columns.
  CMatrix ladder(int count) const {
    const auto n = representation.quotient_dim();
    CMatrix out(n, count);
    const CMatrix up = representation.pi(creation);
    CVector v = representation.omega_vector();
    double factorial = 1.0;
    for (int k = 0; k < count; ++k) {
      if (k > 0) {
        v = up * v;
        factorial *= k;
      }
      out.col(k) = v / std::sqrt(factorial);
    }
    return out;
  }
};

inline CMatrix annihilation_operator(int levels) {
  CMatrix a = CMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline OscillatorModel truncated_oscillator(int levels) {
  if (levels < 2) {
    throw Error(Errc::InvalidArgument, "oscillator needs at least 2 levels");
  }
  CMatrix a = annihilation_operator(levels);
  CMatrix adag = a.adjoint();
  auto algebra = StarAlgebra::generated_by({a, adag});
  CVector vacuum = CVector::Zero(levels);
  vacuum(0) = 1.0;
  auto ground = AlgState::pure(vacuum);
  auto rep = gns(algebra, ground);
  return {levels, a, adag, std::move(algebra), std::move(ground), std::move(rep)};
}

}  // namespace emergent
