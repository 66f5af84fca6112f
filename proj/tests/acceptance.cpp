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

// Acceptance gate: one PASS/FAIL line per criterion with its elapsed time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "emergent/cli.hpp"
#include "support/oracles.hpp"

using namespace emergent;
using emergent::testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

DynamicalSystem shift(std::size_t n, std::size_t stride) {
  std::vector<std::string> labels;
  std::map<std::string, std::string> tr;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) tr[labels[i - 1]] = std::to_string((i - 1 + stride) % n + 1);
  return build_system(labels, tr, {TimeKind::MonoidSteps, 1});
}

Subset of(const DynamicalSystem& s, std::vector<std::string> labels) {
  return Subset::from_labels(s.elements(), labels);
}

PropertyFn indicator(const std::string& name, std::vector<int> yes) {
  PropertyFn p{name, {}};
  for (int i = 1; i <= 5; ++i)
    p.truth[std::to_string(i)] = std::find(yes.begin(), yes.end(), i) != yes.end();
  return p;
}

Outcome ac1() {
  Outcome o;
  auto s = shift(5, 1);
  auto r = reach(s, of(s, {"1", "2", "3"}), 1);
  o.require(r.members == of(s, {"1", "2", "3", "4"}), "closure differs from {1,2,3,4}");
  return o;
}

Outcome ac2() {
  Outcome o;
  auto s2 = shift(4, 2);
  auto a = classify_subset(s2, of(s2, {"2", "4"}), 1);
  o.require(a.is_closed && a.is_open, "{2,4} should be closed and open");
  o.require(a.interior == of(s2, {"2", "4"}), "interior of {2,4}");
  auto s5 = shift(5, 1);
  auto b = classify_subset(s5, of(s5, {"1", "2", "3"}), 1);
  o.require(!b.is_open, "{1,2,3} should not be open");
  o.require(b.interior == of(s5, {"2", "3"}), "interior of {1,2,3}");
  return o;
}

Outcome ac3() {
  Outcome o;
  Elements e({"1", "2", "3", "4", "5"});
  auto even = indicator("even", {2, 4});
  auto prime = indicator("prime", {2, 3, 5});
  auto sigma = generate_sigma({even, prime}, e);
  auto set = [&](std::vector<std::string> l) { return Subset::from_labels(e, l); };
  const std::vector<Subset> atoms{set({"1"}), set({"2"}), set({"4"}), set({"3", "5"})};
  o.require(sigma.atoms() == atoms, "atoms");
  const std::vector<std::vector<std::string>> listed = {
      {},         {"2", "4"}, {"1", "3", "5"},      {"2", "3", "5"},      {"2", "3", "4", "5"},
      {"2"},      {"1", "2", "3", "5"}, {"1", "2", "4"}, {"1", "3", "4", "5"}, {"1"},
      {"3", "5"}, {"4"},      {"1", "2", "3", "4", "5"}};
  o.require(listed.size() == 13, "listing size");
  for (const auto& l : listed) o.require(sigma.contains(set(l)), "listed set missing");
  o.require(sigma.set_count() == 16, "set count");
  o.require((property_set(even, e) & property_set(prime, e).complement()) == set({"4"}),
            "even and not prime");
  return o;
}

Outcome ac4() {
  Outcome o;
  Rng rng(2024);
  for (int rep = 0; rep < 200 && o.ok; ++rep) {
    const std::size_t n = 1 + rep % 8;
    auto s = testing::random_system(rng, n);
    const auto T = s.time().horizon;
    const auto full = Subset::full_mask(n);
    o.require(closure(s, Subset::empty(n), T).is_empty(), "cl(empty)");
    for (std::uint64_t a = 0; a <= full; ++a) {
      const Subset A(a, n);
      const auto ca = closure(s, A, T);
      o.require(ca.bits() == testing::brute_closure(s.step_map(), a, T), "closure vs oracle");
      o.require(A.subset_of(ca), "extensive");
      for (std::uint64_t b = 0; b <= full; ++b) {
        const Subset B(b, n);
        const auto cb = closure(s, B, T);
        if (A.subset_of(B)) o.require(ca.subset_of(cb), "monotone");
        o.require(closure(s, A | B, T) == (ca | cb), "union");
      }
    }
    auto v = check_axioms(s, T);
    o.require((v.classification == Classification::Topology) ==
                  testing::brute_idempotent(s.step_map(), T),
              "verdict vs idempotency oracle");
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  Rng rng(2025);
  auto check = [&](const StarAlgebra& alg, const std::vector<CMatrix>& basis, const CMatrix& rho) {
    auto g = gns(alg, AlgState(rho));
    o.require(g.reproduction_residual() <= 1e-9, "reproduction");
    o.require(g.homomorphism_residual() <= 1e-9, "homomorphism");
    o.require(g.quotient_dim() == testing::gram_rank_oracle(basis, rho), "quotient rank");
    return g.quotient_dim();
  };
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index d = 2 + rep % 3;
    auto basis = testing::random_block_algebra_basis(rng, d);
    std::uniform_int_distribution<Eigen::Index> rank(1, d);
    check(StarAlgebra::from_basis(basis), basis, testing::random_density(rng, d, rank(rng)));
  }
  auto m2 = StarAlgebra::full_matrix_algebra(2);
  CVector up(2);
  up << 1.0, 0.0;
  o.require(check(m2, m2.basis(), AlgState::pure(up).density()) == 2, "vector state dim");
  o.require(check(m2, m2.basis(), AlgState::maximally_mixed(2).density()) == 4, "tracial dim");
  return o;
}

Outcome ac6() {
  Outcome o;
  for (int n : {4, 8}) {
    auto osc = truncated_oscillator(n);
    o.require(osc.ground(osc.creation * osc.annihilation) == Complex{0.0, 0.0}, "<a^dag a> != 0");
    o.require(osc.representation.vector_of(osc.annihilation).norm() <= 1e-10, "pi(a) Omega");
    const CMatrix l = osc.ladder(n - 1);
    o.require(max_abs(l.adjoint() * l - identity(n - 1)) <= 1e-10, "ladder orthonormality");
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  Rng rng(2026);
  for (int rep = 0; rep < 100; ++rep) {
    const Eigen::Index d = 2 + rep % 5;
    const CMatrix a = testing::random_hermitian(rng, d);
    std::uniform_int_distribution<Eigen::Index> rank(1, d);
    const CMatrix rho = testing::random_density(rng, d, rank(rng));
    auto ctx = spectral_context(Observable(a), AlgState(rho));
    o.require(std::abs(ctx.expectation() - (rho * a).trace().real()) <= 1e-9, "Born");
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < ctx.projectors.size(); ++i) {
      sum += ctx.projectors[i];
      for (std::size_t j = 0; j < i; ++j)
        o.require(max_abs(ctx.projectors[i] * ctx.projectors[j]) <= 1e-9, "orthogonality");
    }
    o.require(max_abs(sum - identity(d)) <= 1e-9, "completeness");
  }
  auto mixed = AlgState::maximally_mixed(2);
  Observable s1(pauli(1)), s2(pauli(2));
  bool solo = true;
  try {
    spectral_context(s1, mixed);
    spectral_context(s2, mixed);
  } catch (const Error&) {
    solo = false;
  }
  o.require(solo, "solo contexts");
  bool raised = false;
  try {
    joint_context({s1, s2}, mixed);
  } catch (const ContextIncompatible&) {
    raised = true;
  }
  o.require(raised, "sigma1/sigma2 joint context should raise");
  const CMatrix u = testing::random_unitary(rng, 4);
  CMatrix da = CMatrix::Zero(4, 4), db = CMatrix::Zero(4, 4);
  da.diagonal() << 1, 1, -1, -1;
  db.diagonal() << 2, 0, 0, 0;
  std::vector<Observable> pair{Observable(u * da * u.adjoint()), Observable(u * db * u.adjoint())};
  AlgState st(testing::random_density(rng, 4, 3));
  auto joint = joint_context(pair, st);
  for (std::size_t k = 0; k < 2; ++k) {
    auto m = joint.marginal(k);
    auto s = spectral_context(pair[k], st);
    o.require(m.size() == s.points.size(), "marginal support");
    for (std::size_t i = 0; i < std::min(m.size(), s.points.size()); ++i) {
      o.require(std::abs(m[i].first - s.points[i][0]) <= 1e-9, "marginal point");
      o.require(std::abs(m[i].second - s.weights[i]) <= 1e-9, "marginal weight");
    }
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  Rng rng(2027);
  std::normal_distribution<double> n;
  SpinSystem sys(Vec3(n(rng), n(rng), n(rng)));
  std::uniform_real_distribution<double> t(-30.0, 30.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const double s = t(rng), r = t(rng);
    const CMatrix us = evolution_operator(sys, s);
    o.require(max_abs(us.adjoint() * us - identity(2)) <= 1e-11, "unitarity");
    o.require(max_abs(us * evolution_operator(sys, r) - evolution_operator(sys, s + r)) <= 1e-11,
              "group law");
    const CVector psi = us * SpinState::down().amplitudes();
    o.require(std::abs(psi.squaredNorm() - 1.0) <= 1e-12, "norm");
    o.require(corotating_eigencheck(sys, s) <= 1e-10, "co-rotating eigencheck");
  }
  const double dt = 0.01;
  for (const Vec3& axis : std::vector<Vec3>{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 1) / std::sqrt(3.0)}) {
    SpinSystem field(axis);
    const double period = 2 * std::numbers::pi / field.frequency();
    auto orbit = reachability_orbit(field, SpinState::down(), dt,
                                    static_cast<int>(period / dt) + 10);
    o.require(orbit.period_estimate && std::abs(*orbit.period_estimate - period) <= 2 * dt,
              "orbit period");
  }
  SpinSystem z({0, 0, 1});
  o.require(reachability_orbit(z, SpinState::down(), dt, 1300).classification ==
                OrbitClass::FixedPoint,
            "axis eigenstate should be FixedPoint");
  auto fd = [&](double h) {
    const CMatrix d = (heisenberg_spin(sys, 1, 0.4 + h) - heisenberg_spin(sys, 1, 0.4 - h)) / (2 * h);
    return max_abs(d - precession_rate(sys, 1, 0.4));
  };
  const double e2 = fd(1e-2), e3 = fd(1e-3), e4 = fd(1e-4);
  o.require(std::log10(e2 / e3) >= 1.9 && std::log10(e3 / e4) >= 1.9, "finite-difference order");
  return o;
}

Outcome ac9() {
  Outcome o;
  std::string first, second;
  for (std::string* sink : {&first, &second}) {
    std::ostringstream out, err;
    const int code = cli::run({"scenario", "--all", "--check"}, out, err);
    o.require(code == 0, "golden check failed: " + err.str());
    for (const auto& s : scenarios::registry()) {
      std::ostringstream one, e2;
      cli::run({"scenario", s.name}, one, e2);
      *sink += one.str();
    }
    std::ostringstream n8, e8;
    o.require(cli::run({"scenario", "oscillator", "--N", "8", "--check"}, n8, e8) == 0,
              "oscillator N=8 golden");
  }
  o.require(first == second, "outputs differ between runs");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"AC1", "reachability of {1,2,3} under the 5-shift is {1,2,3,4}", 1e-3, ac1},
      {"AC2", "open/closed classification and interiors", 1e-3, ac2},
      {"AC3", "even/prime sigma-algebra: 4 atoms, 13 listed sets present, 16 total", 10e-3, ac3},
      {"AC4", "closure axioms on 200 random systems, verdict vs idempotency oracle", 10.0, ac4},
      {"AC5", "GNS reproduction, homomorphism and rank on 100 random pairs + M2 states", 5.0, ac5},
      {"AC6", "truncated oscillator N=4,8 ground state", 1.0, ac6},
      {"AC7", "spectral contexts: Born rule, projectors, incompatibility, marginals", 5.0, ac7},
      {"AC8", "spin evolution, co-rotating eigencheck, orbit periods, FD order", 5.0, ac8},
      {"AC9", "scenario goldens byte-identical on two consecutive runs", 5.0, ac9},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s %s: %s [%.3f ms, limit %.0f ms]%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title,
                secs * 1e3, c.limit_seconds * 1e3, o.ok ? "" : " -- ",
                o.ok ? (in_time ? "" : " -- over time limit") : o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
