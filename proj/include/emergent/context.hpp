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
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "emergent/linalg.hpp"
#include "emergent/star_gns.hpp"

namespace emergent {

/// Self-adjoint matrix with a display name.
class Observable {
 public:
  Observable(CMatrix matrix, std::string name = {})
      : matrix_(std::move(matrix)), name_(std::move(name)) {
    require_square(matrix_, "observable");
    const double defect = hermitian_defect(matrix_);
    if (defect > 1e-10) {
      throw Error(Errc::NotSelfAdjoint,
                  (name_.empty() ? std::string("observable") : name_) +
                      ": max |a - a^dag| = " + std::to_string(defect));
    }
  }

  const CMatrix& matrix() const noexcept { return matrix_; }
  const std::string& name() const noexcept { return name_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }

 private:
  CMatrix matrix_;
  std::string name_;
};

struct ContextOptions {
  double degeneracy_relative = 1e-8;
  double degeneracy_floor = 1e-12;
  double commute_tolerance = 1e-10;
  std::uint64_t seed = 0x5eed;
  int max_retries = 8;
};

/// The measure space (X, power set of X, mu) that one observable, or a
/// commuting family, carves out of a state.
struct SpectralContext {
  std::vector<std::string> names;
  std::vector<std::vector<double>> points;  // one tuple per joint eigenspace
  std::vector<CMatrix> projectors;
  std::vector<double> weights;

  /// sum_i lambda_i mu_i for the k-th observable.
  double expectation(std::size_t k = 0) const {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) total += points[i].at(k) * weights[i];
    return total;
  }

  /// Pushes the weights forward onto the k-th observable's spectrum.
  std::vector<std::pair<double, double>> marginal(std::size_t k,
                                                  double tol = 1e-9) const {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = points[i].at(k);
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const auto& p) { return std::abs(p.first - v) <= tol; });
      if (it == out.end()) {
        out.emplace_back(v, weights[i]);
      } else {
        it->second += weights[i];
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline double degeneracy_tolerance(const RVector& sorted_eigs, const ContextOptions& o) {
  const double range = sorted_eigs.size() == 0
                           ? 0.0
                           : sorted_eigs(sorted_eigs.size() - 1) - sorted_eigs(0);
  return std::max(o.degeneracy_relative * range, o.degeneracy_floor);
}

/// Orthogonal projectors onto clusters of nearly equal eigenvalues.
inline std::vector<CMatrix> cluster_projectors(
    const Eigen::SelfAdjointEigenSolver<CMatrix>& eig, const ContextOptions& o) {
  const RVector& vals = eig.eigenvalues();
  const double tol = degeneracy_tolerance(vals, o);
  std::vector<CMatrix> out;
  Eigen::Index start = 0;
  const auto n = vals.size();
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || vals(i) - vals(i - 1) > tol) {
      const auto block = eig.eigenvectors().middleCols(start, i - start);
      out.push_back(block * block.adjoint());
      start = i;
    }
  }
  return out;
}

inline double rayleigh(const CMatrix& a, const CMatrix& p) {
  return (a * p).trace().real() / p.trace().real();
}

struct JointAtom {
  std::vector<double> point;
  CMatrix projector;
};

inline void require_dims(const std::vector<Observable>& obs, Eigen::Index d) {
  for (const auto& o : obs) {
    if (o.dim() != d) throw Error(Errc::DimMismatch, "observable '" + o.name() + "'");
  }
}

inline void require_commuting(const std::vector<Observable>& obs, double tol) {
  for (std::size_t i = 0; i < obs.size(); ++i) {
    for (std::size_t j = i + 1; j < obs.size(); ++j) {
      const double norm = max_abs(commutator(obs[i].matrix(), obs[j].matrix()));
      if (norm > tol) throw ContextIncompatible(i, j, norm);
    }
  }
}

/// Simultaneous diagonalization of a commuting family through a random real
/// combination, verified against each member and retried with fresh
/// coefficients when two joint eigenspaces collide.
inline std::vector<JointAtom> joint_decomposition(const std::vector<Observable>& obs,
                                                  const ContextOptions& o) {
  const auto d = obs.front().dim();
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int attempt = 0; attempt <= o.max_retries; ++attempt) {
    CMatrix mix = CMatrix::Zero(d, d);
    for (const auto& a : obs) mix += coef(rng) * a.matrix();
    const auto projectors = cluster_projectors(hermitian_eig(mix), o);
    std::vector<JointAtom> atoms;
    bool ok = true;
    for (const auto& p : projectors) {
      JointAtom atom{{}, p};
      for (const auto& a : obs) {
        const double lambda = rayleigh(a.matrix(), p);
        const double scale = std::max(1.0, max_abs(a.matrix()));
        if (max_abs(a.matrix() * p - lambda * p) > 1e-9 * scale) {
          ok = false;
          break;
        }
        atom.point.push_back(lambda);
      }
      if (!ok) break;
      atoms.push_back(std::move(atom));
    }
    if (!ok) continue;

    // Merge eigenspaces the combination split but the family does not.
    std::vector<double> tols;
    for (const auto& a : obs) {
      tols.push_back(degeneracy_tolerance(hermitian_eig(a.matrix()).eigenvalues(), o));
    }
    std::vector<JointAtom> merged;
    for (auto& atom : atoms) {
      auto same = [&](const JointAtom& m) {
        for (std::size_t k = 0; k < tols.size(); ++k) {
          if (std::abs(m.point[k] - atom.point[k]) > tols[k]) return false;
        }
        return true;
      };
      auto it = std::find_if(merged.begin(), merged.end(), same);
      if (it == merged.end()) {
        merged.push_back(std::move(atom));
      } else {
        const double wa = it->projector.trace().real();
        const double wb = atom.projector.trace().real();
        for (std::size_t k = 0; k < tols.size(); ++k) {
          it->point[k] = (wa * it->point[k] + wb * atom.point[k]) / (wa + wb);
        }
        it->projector += atom.projector;
      }
    }
    std::sort(merged.begin(), merged.end(),
              [](const JointAtom& x, const JointAtom& y) { return x.point < y.point; });
    return merged;
  }
  throw Error(Errc::InvalidArgument, "simultaneous diagonalization did not separate "
                                     "the joint eigenspaces after retries");
}

inline SpectralContext weigh(std::vector<JointAtom> atoms,
                             const std::vector<Observable>& obs,
                             const AlgState& state) {
  SpectralContext ctx;
  for (const auto& o : obs) ctx.names.push_back(o.name());
  for (auto& atom : atoms) {
    ctx.weights.push_back(state(atom.projector).real());
    ctx.points.push_back(std::move(atom.point));
    ctx.projectors.push_back(std::move(atom.projector));
  }
  return ctx;
}

}  // namespace detail

/// Born weights mu_i = trace(rho P_i) over the spectral projectors of a.
inline SpectralContext spectral_context(const Observable& a, const AlgState& state,
                                        const ContextOptions& o = {}) {
  if (a.dim() != state.dim()) throw Error(Errc::DimMismatch, "observable vs state");
  const auto projectors = detail::cluster_projectors(hermitian_eig(a.matrix()), o);
  std::vector<detail::JointAtom> atoms;
  for (const auto& p : projectors) {
    atoms.push_back({{detail::rayleigh(a.matrix(), p)}, p});
  }
  return detail::weigh(std::move(atoms), {a}, state);
}

inline bool commutes(const Observable& a, const Observable& b, double tol = 1e-10) {
  return max_abs(commutator(a.matrix(), b.matrix())) <= tol;
}

/// Joint measure space of a commuting family. A non-commuting pair raises
/// ContextIncompatible: there is no common eigenbasis to build it on.
inline SpectralContext joint_context(const std::vector<Observable>& obs,
                                     const AlgState& state,
                                     const ContextOptions& o = {}) {
  if (obs.empty()) throw Error(Errc::InvalidArgument, "empty observable family");
  detail::require_dims(obs, state.dim());
  detail::require_commuting(obs, o.commute_tolerance);
  return detail::weigh(detail::joint_decomposition(obs, o), obs, state);
}

/// A point of the classical space of a commutative family: the joint
/// eigenvalue tuple together with its eigenprojector.
struct Character {
  std::vector<double> point;
  CMatrix projector;

  /// Value of a commuting element m at this point, and how far m is from
  /// acting as that scalar on the eigenspace.
  std::pair<double, double> evaluate(const CMatrix& m) const {
    const Complex value = (m * projector).trace() / projector.trace();
    return {value.real(), max_abs(m * projector - value * projector)};
  }
};

inline std::vector<Character> gelfand_points(const std::vector<Observable>& obs,
                                             const ContextOptions& o = {}) {
  if (obs.empty()) throw Error(Errc::InvalidArgument, "empty observable family");
  detail::require_dims(obs, obs.front().dim());
  detail::require_commuting(obs, o.commute_tolerance);
  std::vector<Character> out;
  for (auto& atom : detail::joint_decomposition(obs, o)) {
    out.push_back({std::move(atom.point), std::move(atom.projector)});
  }
  return out;
}

}  // namespace emergent
