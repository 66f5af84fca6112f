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
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "emergent/emergent.hpp"

// Brute-force references and random inputs shared by the test binaries.
namespace emergent::testing {

using Rng = std::mt19937_64;

// Random self-map on n points; the horizon is drawn from [0, 4].
inline DynamicalSystem random_system(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> step(n);
  for (auto& s : step) s = pick(rng);
  std::uniform_int_distribution<std::int64_t> horizon(0, 4);
  return build_system_from_map(step, {TimeKind::MonoidSteps, horizon(rng)});
}

inline DynamicalSystem random_permutation_system(Rng& rng, std::size_t n) {
  std::vector<std::size_t> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = i;
  std::shuffle(step.begin(), step.end(), rng);
  return build_system_from_map(step, {TimeKind::GroupSteps, 1});
}

// Walks every trajectory for exactly T steps, no saturation shortcut.
inline std::uint64_t brute_closure(const std::vector<std::size_t>& step, std::uint64_t s,
                                   std::int64_t horizon) {
  std::uint64_t out = 0;
  for (std::size_t x = 0; x < step.size(); ++x) {
    if (!((s >> x) & 1U)) continue;
    std::size_t y = x;
    out |= std::uint64_t{1} << y;
    for (std::int64_t t = 0; t < horizon; ++t) {
      y = step[y];
      out |= std::uint64_t{1} << y;
    }
  }
  return out;
}

inline bool brute_idempotent(const std::vector<std::size_t>& step, std::int64_t horizon) {
  const std::uint64_t full = (std::uint64_t{1} << step.size()) - 1;
  for (std::uint64_t s = 0; s <= full; ++s) {
    const auto c = brute_closure(step, s, horizon);
    if (brute_closure(step, c, horizon) != c) return false;
  }
  return true;
}

inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex{n(rng), n(rng)};
  return m;
}

inline CMatrix random_unitary(Rng& rng, Eigen::Index d) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, d, d));
  return qr.householderQ() * identity(d);
}

inline CMatrix random_hermitian(Rng& rng, Eigen::Index d) {
  const CMatrix m = random_matrix(rng, d, d);
  return (m + m.adjoint()) / 2.0;
}

// Density matrix of the given rank.
inline CMatrix random_density(Rng& rng, Eigen::Index d, Eigen::Index rank) {
  const CMatrix v = random_matrix(rng, d, rank);
  CMatrix rho = v * v.adjoint();
  return rho / rho.trace();
}

// U (M_k1 (+) M_k2 (+) ...) U^dag for a random composition of d.
inline std::vector<CMatrix> random_block_algebra_basis(Rng& rng, Eigen::Index d) {
  std::vector<Eigen::Index> blocks;
  Eigen::Index left = d;
  while (left > 0) {
    std::uniform_int_distribution<Eigen::Index> size(1, left);
    blocks.push_back(size(rng));
    left -= blocks.back();
  }
  const CMatrix u = random_unitary(rng, d);
  std::vector<CMatrix> basis;
  Eigen::Index offset = 0;
  for (auto k : blocks) {
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        CMatrix e = CMatrix::Zero(d, d);
        e(offset + i, offset + j) = 1.0;
        basis.push_back(u * e * u.adjoint());
      }
    }
    offset += k;
  }
  return basis;
}

// Rank of G_ij = tr(rho b_i^dag b_j) from singular values.
inline Eigen::Index gram_rank_oracle(const std::vector<CMatrix>& basis, const CMatrix& rho,
                                     double rel = 1e-9) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = (rho * basis[i].adjoint() * basis[j]).trace();
  Eigen::JacobiSVD<CMatrix> svd(g);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel * s(0)) ++r;
  return r;
}

// exp(i theta h) through the general complex eigensolver.
inline CMatrix expi_oracle(const CMatrix& h, double theta) {
  Eigen::ComplexEigenSolver<CMatrix> es(h);
  CMatrix d = CMatrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) d(i, i) = std::exp(kI * theta * es.eigenvalues()(i));
  return es.eigenvectors() * d * es.eigenvectors().inverse();
}

}  // namespace emergent::testing
