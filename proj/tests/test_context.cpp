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

#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"

using namespace emergent;
using emergent::testing::Rng;

namespace {

// U diag(values) U^dag with small integer eigenvalues, so degeneracies occur.
CMatrix diagonal_in(const CMatrix& u, Rng& rng, int spread) {
  std::uniform_int_distribution<int> v(-spread, spread);
  CMatrix d = CMatrix::Zero(u.rows(), u.cols());
  for (Eigen::Index i = 0; i < u.rows(); ++i) d(i, i) = static_cast<double>(v(rng));
  return u * d * u.adjoint();
}

}  // namespace

TEST_CASE("spin down measured against s3") {
  CVector down(2);
  down << 1.0, 0.0;
  Observable psi3(-0.5 * pauli(3), "psi3");
  auto ctx = spectral_context(psi3, AlgState::pure(down));
  REQUIRE(ctx.points.size() == 2);
  CHECK(ctx.points[0][0] == Catch::Approx(-0.5));
  CHECK(ctx.points[1][0] == Catch::Approx(0.5));
  CHECK(ctx.weights[0] == Catch::Approx(1.0));
  CHECK(ctx.weights[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(ctx.expectation() == Catch::Approx(-0.5));
}

TEST_CASE("non-Hermitian observable is rejected") {
  try {
    Observable a(pauli(1) + kI * identity(2), "a");
    FAIL("expected NotSelfAdjoint");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSelfAdjoint);
  }
}

TEST_CASE("Born consistency and projector algebra on random pairs") {
  Rng rng(51);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const CMatrix a = rep % 2 ? testing::random_hermitian(rng, d)
                              : diagonal_in(testing::random_unitary(rng, d), rng, 2);
    std::uniform_int_distribution<Eigen::Index> rank(1, d);
    const CMatrix rho = testing::random_density(rng, d, rank(rng));
    auto ctx = spectral_context(Observable(a), AlgState(rho));
    CHECK(std::abs(ctx.expectation() - (rho * a).trace().real()) <= 1e-9);
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < ctx.projectors.size(); ++i) {
      sum += ctx.projectors[i];
      for (std::size_t j = 0; j < ctx.projectors.size(); ++j) {
        if (i != j) CHECK(max_abs(ctx.projectors[i] * ctx.projectors[j]) <= 1e-9);
      }
    }
    CHECK(max_abs(sum - identity(d)) <= 1e-9);
    double total = 0.0;
    for (double w : ctx.weights) {
      CHECK(w >= -1e-12);
      total += w;
    }
    CHECK(total == Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sigma1 and sigma2 have no joint context") {
  auto st = AlgState::maximally_mixed(2);
  Observable s1(pauli(1), "sigma1"), s2(pauli(2), "sigma2");
  CHECK_NOTHROW(spectral_context(s1, st));
  CHECK_NOTHROW(spectral_context(s2, st));
  CHECK_FALSE(commutes(s1, s2));
  try {
    joint_context({s1, s2}, st);
    FAIL("expected ContextIncompatible");
  } catch (const ContextIncompatible& e) {
    CHECK(e.code() == Errc::ContextIncompatible);
    CHECK(e.first == 0);
    CHECK(e.second == 1);
    CHECK(e.commutator_norm == Catch::Approx(2.0));
  }
}

TEST_CASE("commuting families: joint marginals match solo contexts") {
  Rng rng(52);
  for (int rep = 0; rep < 40; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const CMatrix u = testing::random_unitary(rng, d);
    std::vector<Observable> obs{Observable(diagonal_in(u, rng, 1), "a"),
                                Observable(diagonal_in(u, rng, 2), "b"),
                                Observable(diagonal_in(u, rng, 1), "c")};
    AlgState st(testing::random_density(rng, d, d));
    auto joint = joint_context(obs, st);
    for (std::size_t k = 0; k < obs.size(); ++k) {
      auto solo = spectral_context(obs[k], st);
      auto m = joint.marginal(k);
      REQUIRE(m.size() == solo.points.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(std::abs(m[i].first - solo.points[i][0]) <= 1e-9);
        CHECK(std::abs(m[i].second - solo.weights[i]) <= 1e-9);
      }
      CHECK(std::abs(joint.expectation(k) - st(obs[k].matrix()).real()) <= 1e-9);
    }
    auto chars = gelfand_points(obs);
    CHECK(chars.size() == joint.points.size());
    for (const auto& c : chars) {
      for (std::size_t k = 0; k < obs.size(); ++k) {
        auto [value, residual] = c.evaluate(obs[k].matrix());
        CHECK(std::abs(value - c.point[k]) <= 1e-9);
        CHECK(residual <= 1e-9);
      }
      // Characters are multiplicative on the generated algebra.
      auto [ab, r] = c.evaluate(obs[0].matrix() * obs[1].matrix());
      CHECK(std::abs(ab - c.point[0] * c.point[1]) <= 1e-9);
      CHECK(r <= 1e-9);
    }
  }
}

TEST_CASE("joint context is deterministic for a fixed seed") {
  Rng rng(53);
  const CMatrix u = testing::random_unitary(rng, 4);
  std::vector<Observable> obs{Observable(diagonal_in(u, rng, 1)),
                              Observable(diagonal_in(u, rng, 1))};
  AlgState st(testing::random_density(rng, 4, 2));
  auto a = joint_context(obs, st);
  auto b = joint_context(obs, st);
  CHECK(a.points == b.points);
  CHECK(a.weights == b.weights);
}
