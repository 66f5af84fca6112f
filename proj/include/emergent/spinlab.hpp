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

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "emergent/linalg.hpp"

namespace emergent {

using Vec3 = Eigen::Vector3d;

/// Spin-1/2 in a static field with the free Hamiltonian neglected.
///
/// The coupling enters only through B~ = g e B / (4 m); natural units
/// (e = m = hbar = 1) are the default.
class SpinSystem {
 public:
  explicit SpinSystem(const Vec3& field, double g = 2.0, double charge = 1.0,
                      double mass = 1.0, double hbar = 1.0)
      : field_(field), g_(g), charge_(charge), mass_(mass), hbar_(hbar) {
    if (!(mass > 0.0) || !(hbar > 0.0)) {
      throw Error(Errc::InvalidArgument, "mass and hbar must be positive");
    }
    coupling_ = g * charge * field / (4.0 * mass);
    magnitude_ = coupling_.norm();
    if (!(magnitude_ > 0.0) || !std::isfinite(magnitude_)) {
      throw Error(Errc::ZeroField, "effective field magnitude is zero");
    }
    axis_ = coupling_ / magnitude_;
  }

  /// Electron in SI units.
  static SpinSystem electron_si(const Vec3& field_tesla, double g = 2.00231930436) {
    return SpinSystem(field_tesla, g, 1.602176634e-19, 9.1093837015e-31,
                      1.054571817e-34);
  }

  const Vec3& field() const noexcept { return field_; }
  double g() const noexcept { return g_; }
  double charge() const noexcept { return charge_; }
  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }
  /// B~ vector, its magnitude, and the unit axis n.
  const Vec3& coupling() const noexcept { return coupling_; }
  double frequency() const noexcept { return magnitude_; }
  const Vec3& axis() const noexcept { return axis_; }

 private:
  Vec3 field_;
  double g_, charge_, mass_, hbar_;
  Vec3 coupling_;
  double magnitude_ = 0.0;
  Vec3 axis_;
};

/// Dimensionless spin matrices s_i = (2/hbar) psi_i in the ordered basis
/// (|0> spin-down, |1> spin-up): s1 = sigma1, s2 = -sigma2, s3 = -sigma3.
/// They obey [s_i, s_j] = 2i eps_ijk s_k and s3|0> = -|0>.
inline CMatrix spin_matrix(int i) {
  switch (i) {
    case 1: return pauli(1);
    case 2: return -pauli(2);
    case 3: return -pauli(3);
    default: throw Error(Errc::BadAxis, "axis " + std::to_string(i));
  }
}

/// psi_i = hbar s_i / 2.
inline CMatrix spin_operator(const SpinSystem& sys, int i) {
  return 0.5 * sys.hbar() * spin_matrix(i);
}

inline CMatrix axis_spin_matrix(const Vec3& n) {
  return n(0) * spin_matrix(1) + n(1) * spin_matrix(2) + n(2) * spin_matrix(3);
}

/// Normalized two-component spinor.
class SpinState {
 public:
  explicit SpinState(const CVector& amplitudes) : amp_(amplitudes) {
    if (amp_.size() != 2) throw Error(Errc::DimMismatch, "spinor must have 2 components");
    if (std::abs(amp_.norm() - 1.0) > 1e-10) {
      throw Error(Errc::InvalidArgument,
                  "spinor norm " + std::to_string(amp_.norm()) + " is not 1");
    }
  }
  SpinState(Complex down, Complex up) : SpinState(make(down, up)) {}

  static SpinState down() { return {1.0, 0.0}; }
  static SpinState up() { return {0.0, 1.0}; }

  /// Eigenstate of s_i with eigenvalue sign (+1 or -1).
  static SpinState eigenstate(int axis, int sign) {
    auto eig = hermitian_eig(spin_matrix(axis));
    return SpinState(CVector(eig.eigenvectors().col(sign > 0 ? 1 : 0)));
  }

  const CVector& amplitudes() const noexcept { return amp_; }

 private:
  static CVector make(Complex a, Complex b) {
    CVector v(2);
    v << a, b;
    return v;
  }
  CVector amp_;
};

/// U(t) = exp(i B~ t n.s) = I cos(B~ t) + i n.s sin(B~ t).
inline CMatrix evolution_operator(const SpinSystem& sys, double t) {
  const double phase = sys.frequency() * t;
  return std::cos(phase) * identity(2) +
         kI * std::sin(phase) * axis_spin_matrix(sys.axis());
}

inline SpinState evolve_state(const SpinSystem& sys, const SpinState& psi0, double t) {
  CVector v = evolution_operator(sys, t) * psi0.amplitudes();
  return SpinState(CVector(v / v.norm()));
}

/// Expectation vector (<s1>, <s2>, <s3>) on the unit sphere.
inline Vec3 bloch_vector(const SpinState& psi) {
  const auto& v = psi.amplitudes();
  Vec3 b;
  for (int i = 1; i <= 3; ++i) b(i - 1) = v.dot(spin_matrix(i) * v).real();
  return b;
}

/// Right-handed rotation by angle about a unit axis.
inline Eigen::Matrix3d rotation_matrix(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

/// The SO(3) matrix R with U^dag psi_i U = sum_j R_ij psi_j. The spinor
/// rotates expectation vectors by -2 B~ t about n.
inline Eigen::Matrix3d precession_rotation(const SpinSystem& sys, double t) {
  return rotation_matrix(sys.axis(), -2.0 * sys.frequency() * t);
}

/// Heisenberg picture psi_i(t) = U^dag(t) psi_i U(t).
inline CMatrix heisenberg_spin(const SpinSystem& sys, int i, double t) {
  const CMatrix u = evolution_operator(sys, t);
  return u.adjoint() * spin_operator(sys, i) * u;
}

/// d psi_i / dt = -(g e / 2m) eps_ijk B_j psi_k(t), i.e. -2 (B~ x psi(t))_i.
inline CMatrix precession_rate(const SpinSystem& sys, int i, double t) {
  if (i < 1 || i > 3) throw Error(Errc::BadAxis, "axis " + std::to_string(i));
  const Vec3& b = sys.coupling();
  const int j = i % 3 + 1;
  const int k = j % 3 + 1;
  // eps_ijk = +1, eps_ikj = -1 for the cyclic successor pair (j, k).
  return -2.0 * (b(j - 1) * heisenberg_spin(sys, k, t) -
                 b(k - 1) * heisenberg_spin(sys, j, t));
}

/// Observable carried along with the state: U(t) psi_i U(t)^dag.
inline CMatrix corotated_spin(const SpinSystem& sys, int i, double t) {
  const CMatrix u = evolution_operator(sys, t);
  return u * spin_operator(sys, i) * u.adjoint();
}

/// || psi3_co(t) |Psi(t)> + (hbar/2) |Psi(t)> || with |Psi(t)> = U(t)|0>.
inline double corotating_eigencheck(const SpinSystem& sys, double t) {
  const CVector psi = evolve_state(sys, SpinState::down(), t).amplitudes();
  return (corotated_spin(sys, 3, t) * psi + 0.5 * sys.hbar() * psi).norm();
}

enum class OrbitClass { FixedPoint, Circle };

inline const char* orbit_class_name(OrbitClass c) {
  return c == OrbitClass::FixedPoint ? "FixedPoint" : "Circle";
}

struct OrbitSample {
  double t;
  Vec3 bloch;
};

struct OrbitReport {
  std::vector<OrbitSample> samples;
  // First return of the spinor itself (global phase included).
  std::optional<double> period_estimate;
  // First return of the Bloch vector; half the spinor period.
  std::optional<double> bloch_period;
  OrbitClass classification = OrbitClass::FixedPoint;
  Vec3 plane_axis = Vec3::Zero();
  double plane_offset = 0.0;  // b . n, constant along the orbit
  double radius = 0.0;        // distance of the orbit from the n axis
  double axis_distance_spread = 0.0;
  double max_norm_error = 0.0;
  bool great_circle = false;
};

namespace detail {

/// First sampled near-return of dist(t_k) to zero, refined by the vertex of
/// the parabola through the squared distances at k-1, k, k+1.
template <typename Distance>
std::optional<double> first_return(Distance&& dist, double dt, int steps, double tol) {
  std::vector<double> d2(static_cast<std::size_t>(steps) + 2);
  for (int k = 0; k <= steps + 1; ++k) {
    const double d = dist(k * dt);
    d2[static_cast<std::size_t>(k)] = d * d;
  }
  double peak = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const auto i = static_cast<std::size_t>(k);
    peak = std::max(peak, d2[i]);
    const bool departed = peak > 100.0 * tol * tol;
    if (!departed || d2[i] > d2[i - 1] || d2[i] > d2[i + 1]) continue;
    if (d2[i] > 0.25 * peak) continue;
    const double curvature = d2[i - 1] - 2.0 * d2[i] + d2[i + 1];
    const double shift = curvature > 0.0 ? 0.5 * (d2[i - 1] - d2[i + 1]) / curvature : 0.0;
    const double t = (k + shift) * dt;
    if (dist(t) <= tol) return t;
  }
  return std::nullopt;
}

}  // namespace detail

/// Samples the Bloch trajectory of psi0, classifies it, and estimates the
/// return time. The horizon must cover one full spinor period 2 pi / B~.
inline OrbitReport reachability_orbit(const SpinSystem& sys, const SpinState& psi0,
                                      double dt, int steps, double tol = 1e-6) {
  if (!(dt > 0.0) || steps < 1) {
    throw Error(Errc::InvalidArgument, "dt must be positive and steps >= 1");
  }
  const double full_period = 2.0 * std::numbers::pi / sys.frequency();
  if (steps * dt < full_period) {
    throw Error(Errc::HorizonTooShort,
                "steps*dt = " + std::to_string(steps * dt) + " < 2pi/B~ = " +
                    std::to_string(full_period));
  }
  OrbitReport r;
  r.plane_axis = sys.axis();
  const Vec3 b0 = bloch_vector(psi0);
  double reach = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    const Vec3 b = bloch_vector(evolve_state(sys, psi0, t));
    r.samples.push_back({t, b});
    r.max_norm_error = std::max(r.max_norm_error, std::abs(b.norm() - 1.0));
    reach = std::max(reach, (b - b0).norm());
  }
  // Diameter lies in [reach, 2 reach]; only the ambiguous band needs pairs.
  double diameter = reach;
  if (reach <= tol && 2.0 * reach > tol) {
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      for (std::size_t j = i + 1; j < r.samples.size(); ++j) {
        diameter = std::max(diameter, (r.samples[i].bloch - r.samples[j].bloch).norm());
      }
    }
  }
  r.classification = diameter <= tol ? OrbitClass::FixedPoint : OrbitClass::Circle;

  const Vec3& n = sys.axis();
  r.plane_offset = b0.dot(n);
  r.radius = (b0 - r.plane_offset * n).norm();
  for (const auto& s : r.samples) {
    const double dist = (s.bloch - s.bloch.dot(n) * n).norm();
    r.axis_distance_spread = std::max(r.axis_distance_spread, std::abs(dist - r.radius));
  }
  r.great_circle = std::abs(r.plane_offset) <= tol;

  const CVector& a0 = psi0.amplitudes();
  r.period_estimate = detail::first_return(
      [&](double t) { return (evolve_state(sys, psi0, t).amplitudes() - a0).norm(); },
      dt, steps, tol);
  if (r.classification == OrbitClass::Circle) {
    r.bloch_period = detail::first_return(
        [&](double t) { return (bloch_vector(evolve_state(sys, psi0, t)) - b0).norm(); },
        dt, steps, tol);
  }
  return r;
}

}  // namespace emergent
