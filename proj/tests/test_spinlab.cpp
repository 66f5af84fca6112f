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

#include <numbers>

#include "support/oracles.hpp"

using namespace emergent;
using emergent::testing::Rng;

namespace {

Vec3 random_field(Rng& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng)};
}

double fd_residual(const SpinSystem& sys, int i, double t, double h) {
  const CMatrix fd = (heisenberg_spin(sys, i, t + h) - heisenberg_spin(sys, i, t - h)) / (2 * h);
  return max_abs(fd - precession_rate(sys, i, t));
}

}  // namespace

TEST_CASE("spin operators obey su(2) and psi3 |0> = -hbar/2 |0>") {
  for (int i = 1; i <= 3; ++i) {
    const int j = i % 3 + 1, k = j % 3 + 1;
    CHECK(max_abs(commutator(spin_matrix(i), spin_matrix(j)) - 2.0 * kI * spin_matrix(k)) == 0.0);
  }
  SpinSystem sys({0, 0, 1}, 2, 1, 1, 0.7);
  CVector down = SpinState::down().amplitudes();
  CHECK((spin_operator(sys, 3) * down + 0.35 * down).norm() <= 1e-15);
}

TEST_CASE("evolution matches the closed-form spinor") {
  Rng rng(61);
  std::uniform_real_distribution<double> t(-20.0, 20.0);
  for (int rep = 0; rep < 200; ++rep) {
    SpinSystem sys(random_field(rng));
    const Vec3 n = sys.axis();
    const double s = t(rng), w = sys.frequency() * s;
    const CVector psi = evolve_state(sys, SpinState::down(), s).amplitudes();
    const Complex a = std::cos(w) - kI * n(2) * std::sin(w);
    const Complex b = kI * std::sin(w) * (n(0) - kI * n(1));
    CHECK(std::abs(psi(0) - a) <= 1e-12);
    CHECK(std::abs(psi(1) - b) <= 1e-12);
    CHECK(max_abs(evolution_operator(sys, s) -
                  testing::expi_oracle(axis_spin_matrix(n), w)) <= 1e-10);
  }
}

TEST_CASE("unitarity, group law and norm over many times") {
  Rng rng(62);
  std::uniform_real_distribution<double> t(-50.0, 50.0);
  SpinSystem sys(random_field(rng));
  for (int rep = 0; rep < 1000; ++rep) {
    const double s = t(rng), u = t(rng);
    const CMatrix us = evolution_operator(sys, s);
    CHECK(max_abs(us.adjoint() * us - identity(2)) <= 1e-12);
    CHECK(max_abs(us * evolution_operator(sys, u) - evolution_operator(sys, s + u)) <= 1e-11);
    const CVector psi = us * SpinState::eigenstate(2, 1).amplitudes();
    CHECK(std::abs(psi.squaredNorm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("full and half periods") {
  SpinSystem sys({0.3, -1.2, 0.4}, 2.0, 1.0, 1.0);
  const double w = sys.frequency();
  CHECK(max_abs(evolution_operator(sys, 2 * std::numbers::pi / w) - identity(2)) <= 1e-12);
  CHECK(max_abs(evolution_operator(sys, std::numbers::pi / w) + identity(2)) <= 1e-12);
}

TEST_CASE("Heisenberg and Schroedinger pictures agree through the rotation") {
  Rng rng(63);
  std::uniform_real_distribution<double> t(-10.0, 10.0);
  for (int rep = 0; rep < 200; ++rep) {
    SpinSystem sys(random_field(rng), 2.0, 1.0, 1.0, 1.3);
    const SpinState psi0 = SpinState::eigenstate(1 + rep % 3, rep % 2 ? 1 : -1);
    const double s = t(rng);
    const CVector now = evolve_state(sys, psi0, s).amplitudes();
    const CVector start = psi0.amplitudes();
    const Eigen::Matrix3d r = precession_rotation(sys, s);
    for (int i = 1; i <= 3; ++i) {
      double rotated = 0.0;
      for (int j = 1; j <= 3; ++j)
        rotated += r(i - 1, j - 1) * start.dot(spin_operator(sys, j) * start).real();
      CHECK(std::abs(now.dot(spin_operator(sys, i) * now).real() - rotated) <= 1e-9);
      CHECK(std::abs(start.dot(heisenberg_spin(sys, i, s) * start).real() - rotated) <= 1e-9);
    }
    CHECK(std::abs(bloch_vector(evolve_state(sys, psi0, s)).norm() - 1.0) <= 1e-9);
  }
}

TEST_CASE("precession law against central differences is second order") {
  Rng rng(64);
  for (int rep = 0; rep < 10; ++rep) {
    SpinSystem sys(random_field(rng));
    const double t = 0.37 * rep + 0.1;
    for (int i = 1; i <= 3; ++i) {
      const double r2 = fd_residual(sys, i, t, 1e-2);
      const double r3 = fd_residual(sys, i, t, 1e-3);
      const double r4 = fd_residual(sys, i, t, 1e-4);
      CHECK(std::log10(r2 / r3) >= 1.9);
      CHECK(std::log10(r3 / r4) >= 1.9);
    }
  }
}

TEST_CASE("co-rotated psi3 keeps the evolved state at -hbar/2") {
  Rng rng(65);
  SpinSystem sys(random_field(rng), 2.0, 1.0, 1.0, 2.0);
  std::uniform_real_distribution<double> t(0.0, 100.0);
  for (int rep = 0; rep < 1000; ++rep) CHECK(corotating_eigencheck(sys, t(rng)) <= 1e-10);
}

TEST_CASE("orbit periods and circle invariant") {
  const double dt = 0.01;
  for (const Vec3& n : std::vector<Vec3>{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 1) / std::sqrt(3.0)}) {
    SpinSystem sys(n);
    const double period = 2 * std::numbers::pi / sys.frequency();
    auto orbit = reachability_orbit(sys, SpinState::down(), dt,
                                    static_cast<int>(period / dt) + 20);
    CHECK(orbit.classification == OrbitClass::Circle);
    REQUIRE(orbit.period_estimate.has_value());
    CHECK(std::abs(*orbit.period_estimate - period) <= 2 * dt);
    REQUIRE(orbit.bloch_period.has_value());
    CHECK(std::abs(*orbit.bloch_period - period / 2) <= 2 * dt);
    CHECK(orbit.axis_distance_spread <= 1e-9);
    CHECK(orbit.max_norm_error <= 1e-9);
    CHECK((orbit.plane_axis - n.normalized()).norm() <= 1e-12);
  }
}

TEST_CASE("axis eigenstate is a fixed point") {
  SpinSystem sys({0, 0, 2});
  auto orbit = reachability_orbit(sys, SpinState::down(), 0.01, 1000);
  CHECK(orbit.classification == OrbitClass::FixedPoint);
  CHECK(orbit.radius <= 1e-9);
}

TEST_CASE("psi2 eigenstate orbit versus the |0> orbit") {
  SpinSystem x({1, 0, 0});
  auto down = reachability_orbit(x, SpinState::down(), 0.01, 1300);
  auto y = reachability_orbit(x, SpinState::eigenstate(2, 1), 0.01, 1300);
  CHECK(down.great_circle);
  CHECK(y.great_circle);
  CHECK(std::abs(down.plane_offset - y.plane_offset) <= 1e-12);
  SpinSystem diag(Vec3(1, 1, 1));
  auto d0 = reachability_orbit(diag, SpinState::down(), 0.01, 1300);
  auto d2 = reachability_orbit(diag, SpinState::eigenstate(2, 1), 0.01, 1300);
  CHECK(std::abs(d0.plane_offset + 1 / std::sqrt(3.0)) <= 1e-9);
  CHECK(std::abs(d2.plane_offset - 1 / std::sqrt(3.0)) <= 1e-9);
  CHECK_FALSE(d2.great_circle);
}

TEST_CASE("spin errors") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::GoldenMismatch;
  };
  CHECK(code([] { SpinSystem({0, 0, 0}); }) == Errc::ZeroField);
  CHECK(code([] { spin_matrix(0); }) == Errc::BadAxis);
  CHECK(code([] { reachability_orbit(SpinSystem({0, 0, 1}), SpinState::down(), 0.01, 10); }) ==
        Errc::HorizonTooShort);
  auto si = SpinSystem::electron_si({0, 0, 1e-3});
  CHECK(si.frequency() > 0.0);
}
