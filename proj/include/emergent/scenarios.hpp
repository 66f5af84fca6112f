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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "emergent/io.hpp"

namespace emergent::scenarios {

using nlohmann::json;

struct ScenarioArgs {
  int levels = 4;  // oscillator truncation
};

struct Scenario {
  std::string name;
  std::string module;
  std::string summary;
  std::function<json(const ScenarioArgs&)> run;
};

namespace detail {

/// Rounds to 10 significant digits so golden files do not depend on the
/// last bits of floating-point results.
inline double rounded(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

inline json check(double residual, double tol) {
  return {{"pass", residual <= tol}, {"tolerance", tol}};
}

inline DynamicalSystem shift(int n, int stride) {
  std::vector<std::string> labels;
  std::map<std::string, std::string> transitions;
  for (int x = 1; x <= n; ++x) {
    labels.push_back(std::to_string(x));
    transitions[std::to_string(x)] = std::to_string((x - 1 + stride) % n + 1);
  }
  return build_system(labels, transitions, {TimeKind::MonoidSteps, 1});
}

inline std::vector<std::string> labels(std::initializer_list<int> xs) {
  std::vector<std::string> out;
  for (int x : xs) out.push_back(std::to_string(x));
  return out;
}

inline PropertyFn even_property() {
  PropertyFn p{"even", {}};
  for (int x = 1; x <= 5; ++x) p.truth[std::to_string(x)] = x % 2 == 0 ? 1 : 0;
  return p;
}

inline PropertyFn prime_property() {
  PropertyFn p{"prime", {}};
  for (int x = 1; x <= 5; ++x) p.truth[std::to_string(x)] = (x == 2 || x == 3 || x == 5) ? 1 : 0;
  return p;
}

inline Elements one_to_five() { return Elements(labels({1, 2, 3, 4, 5})); }

inline CVector basis_vector(Eigen::Index d, Eigen::Index i) {
  CVector v = CVector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline json gns_summary(const GnsRepresentation& rep) {
  return {{"quotient_dim", rep.quotient_dim()},
          {"omega_norm", rounded(rep.omega_vector().squaredNorm())},
          {"omega_norm_is_one", check(rep.omega_norm_error(), 1e-10)},
          {"reproduction", check(rep.reproduction_residual(), 1e-9)},
          {"star_homomorphism", check(rep.homomorphism_residual(), 1e-9)}};
}

inline json orbit_summary(const OrbitReport& r, double expected_period, double dt) {
  json out = {{"classification", orbit_class_name(r.classification)},
              {"plane_axis", {rounded(r.plane_axis(0)), rounded(r.plane_axis(1)),
                              rounded(r.plane_axis(2))}},
              {"plane_offset", rounded(r.plane_offset)},
              {"radius", rounded(r.radius)},
              {"great_circle", r.great_circle},
              {"unit_sphere", check(r.max_norm_error, 1e-9)},
              {"circle_invariant", check(r.axis_distance_spread, 1e-9)}};
  out["period_estimate"] = r.period_estimate ? json(rounded(*r.period_estimate)) : json(nullptr);
  out["bloch_period"] = r.bloch_period ? json(rounded(*r.bloch_period)) : json(nullptr);
  out["period_within_2dt"] =
      r.period_estimate && std::abs(*r.period_estimate - expected_period) <= 2.0 * dt;
  return out;
}

}  // namespace detail

inline const std::vector<Scenario>& registry() {
  using namespace detail;
  static const std::vector<Scenario> all = {
      {"shift5-build", "dynsys", "cyclic shift U(x,1)=x+1 on {1..5} with U(5,1)=1",
       [](const ScenarioArgs&) {
         auto sys = shift(5, 1);
         json out = io::system_to_json(sys);
         out["valid"] = true;
         out["identity_at_zero"] = true;
         for (const auto& x : sys.elements().labels()) {
           out["identity_at_zero"] = out["identity_at_zero"].get<bool>() && evolve(sys, x, 0) == x;
         }
         return out;
       }},
      {"shift5-evolve", "dynsys", "U(3,1) for the cyclic 5-shift",
       [](const ScenarioArgs&) {
         auto sys = shift(5, 1);
         return json{{"x", "3"}, {"t", 1}, {"result", evolve(sys, "3", 1)}};
       }},
      {"shift5-reach", "dynsys", "reachability domain of {1,2,3} after one step",
       [](const ScenarioArgs&) {
         auto sys = shift(5, 1);
         auto r = reach(sys, Subset::from_labels(sys.elements(), labels({1, 2, 3})), 1);
         return json{{"closure", io::subset_to_json(r.members, sys.elements())}};
       }},
      {"shift2-reach", "dynsys", "{2,4} under U(x,1)=x+2 on {1..4} is invariant",
       [](const ScenarioArgs&) {
         auto sys = shift(4, 2);
         auto x0 = Subset::from_labels(sys.elements(), labels({2, 4}));
         auto r = reach(sys, x0, 1);
         return json{{"closure", io::subset_to_json(r.members, sys.elements())},
                     {"equals_source", r.members == x0}};
       }},
      {"shift2-classify", "pretopology", "{2,4} is closed and open with interior {2,4}",
       [](const ScenarioArgs&) {
         auto sys = shift(4, 2);
         auto x0 = Subset::from_labels(sys.elements(), labels({2, 4}));
         return io::closure_report_to_json(classify_subset(sys, x0, 1), sys.elements());
       }},
      {"shift5-classify", "pretopology", "{1,2,3} under the 5-shift is not open; interior {2,3}",
       [](const ScenarioArgs&) {
         auto sys = shift(5, 1);
         auto x0 = Subset::from_labels(sys.elements(), labels({1, 2, 3}));
         json out = io::closure_report_to_json(classify_subset(sys, x0, 1), sys.elements());
         out["complement_closure"] =
             io::subset_to_json(closure(sys, x0.complement(), 1), sys.elements());
         return out;
       }},
      {"even-prime-sigma", "sigma_measure", "sigma-algebra generated by evenness and primality",
       [](const ScenarioArgs&) {
         const auto elems = one_to_five();
         auto sigma = generate_sigma({even_property(), prime_property()}, elems);
         // The thirteen sets written out explicitly for this example.
         const std::vector<std::vector<int>> listed = {
             {},        {2, 4},       {1, 3, 5},    {2, 3, 5}, {2, 3, 4, 5},
             {2},       {1, 2, 3, 5}, {1, 2, 4},    {1, 3, 4, 5}, {1},
             {3, 5},    {4},          {1, 2, 3, 4, 5}};
         json flagged = json::array();
         bool all_present = true;
         std::vector<Subset> listed_sets;
         for (const auto& l : listed) {
           std::vector<std::string> ls;
           for (int x : l) ls.push_back(std::to_string(x));
           auto s = Subset::from_labels(elems, ls);
           listed_sets.push_back(s);
           const bool present = sigma.contains(s);
           all_present = all_present && present;
           flagged.push_back({{"set", ls}, {"present", present}});
         }
         std::vector<Subset> unlisted;
         for (const auto& s : sigma.sets()) {
           if (std::find(listed_sets.begin(), listed_sets.end(), s) == listed_sets.end()) {
             unlisted.push_back(s);
           }
         }
         auto a_e = property_set(even_property(), elems);
         auto a_p = property_set(prime_property(), elems);
         json out = io::sigma_to_json(sigma, false);
         out["listed_sets"] = flagged;
         out["all_listed_present"] = all_present;
         out["not_in_listing"] = io::family_to_json(unlisted, elems);
         out["even_and_not_prime"] = io::subset_to_json(a_e & a_p.complement(), elems);
         return out;
       }},
      {"even-sigma", "sigma_measure", "sigma-algebra of the single evenness property",
       [](const ScenarioArgs&) {
         auto sigma = generate_sigma({even_property()}, one_to_five());
         return io::sigma_to_json(sigma, true);
       }},
      {"pauli-commutator", "star_gns", "[sigma1, sigma2] = 2i sigma3",
       [](const ScenarioArgs&) {
         CMatrix c = commutator(pauli(1), pauli(2));
         json out = {{"commutator", io::matrix_to_json(c)},
                     {"equals_2i_sigma3", check(max_abs(c - 2.0 * kI * pauli(3)), 1e-15)}};
         double worst = 0.0;
         for (int i = 1; i <= 3; ++i) {
           const int j = i % 3 + 1, k = j % 3 + 1;
           worst = std::max(worst, max_abs(commutator(pauli(i), pauli(j)) - 2.0 * kI * pauli(k)));
         }
         out["cyclic_relations"] = check(worst, 1e-15);
         return out;
       }},
      {"gns-normalization", "star_gns", "<Omega,Omega> = omega(1) = 1 for the M2 states",
       [](const ScenarioArgs&) {
         auto m2 = StarAlgebra::full_matrix_algebra(2);
         auto vector_state = AlgState::pure(basis_vector(2, 0));
         auto trace_state = AlgState::maximally_mixed(2);
         return json{{"vector_state", gns_summary(gns(m2, vector_state))},
                     {"tracial_state", gns_summary(gns(m2, trace_state))}};
       }},
      {"oscillator", "star_gns", "truncated harmonic oscillator in the ground state",
       [](const ScenarioArgs& args) {
         auto osc = truncated_oscillator(args.levels);
         const auto& rep = osc.representation;
         const double number = osc.ground(osc.creation * osc.annihilation).real();
         const double annihilated = rep.vector_of(osc.annihilation).norm();
         const CMatrix ladder = osc.ladder(args.levels - 1);
         const double ortho = max_abs(ladder.adjoint() * ladder -
                                      identity(args.levels - 1));
         CMatrix ccr = commutator(osc.annihilation, osc.creation);
         const auto last = args.levels - 1;
         CMatrix expected = identity(args.levels);
         expected(last, last) = 1.0 - args.levels;
         return json{{"levels", args.levels},
                     {"ground_number_expectation", number},
                     {"quotient_dim", rep.quotient_dim()},
                     {"pi_a_omega_norm", check(annihilated, 1e-10)},
                     {"ladder_orthonormal_below_truncation", check(ortho, 1e-10)},
                     {"commutator_corner", rounded(ccr(last, last).real())},
                     {"commutator_identity_elsewhere", check(max_abs(ccr - expected), 1e-12)},
                     {"representation", gns_summary(rep)}};
       }},
      {"spin-down-context", "context", "psi3 = (hbar/2) s3 measured on |0>",
       [](const ScenarioArgs&) {
         SpinSystem sys({0.0, 0.0, 1.0});
         Observable psi3(spin_operator(sys, 3), "psi3");
         auto state = AlgState::pure(SpinState::down().amplitudes());
         auto ctx = spectral_context(psi3, state);
         json points = json::array(), weights = json::array();
         for (std::size_t i = 0; i < ctx.points.size(); ++i) {
           points.push_back(rounded(ctx.points[i][0]));
           weights.push_back(rounded(ctx.weights[i]));
         }
         const double eig = (psi3.matrix() * SpinState::down().amplitudes() +
                             0.5 * SpinState::down().amplitudes()).norm();
         return json{{"points", points}, {"weights", weights},
                     {"expectation", rounded(ctx.expectation())},
                     {"down_is_minus_half_eigenstate", check(eig, 1e-15)}};
       }},
      {"pauli-commutes", "context", "commutation tests for Pauli observables",
       [](const ScenarioArgs&) {
         Observable s1(pauli(1), "sigma1"), s2(pauli(2), "sigma2"), s3(pauli(3), "sigma3");
         return json{{"sigma1_sigma2", commutes(s1, s2)},
                     {"sigma3_sigma3", commutes(s3, s3)},
                     {"sigma1_sigma2_commutator_norm",
                      rounded(max_abs(commutator(s1.matrix(), s2.matrix())))}};
       }},
      {"pauli-joint-incompatible", "context",
       "sigma1 and sigma2 have solo contexts but no joint one",
       [](const ScenarioArgs&) {
         Observable s1(pauli(1), "sigma1"), s2(pauli(2), "sigma2");
         auto state = AlgState::pure(SpinState::down().amplitudes());
         json solo = json::object();
         for (const auto* o : {&s1, &s2}) {
           auto ctx = spectral_context(*o, state);
           json w = json::array();
           for (double x : ctx.weights) w.push_back(rounded(x));
           solo[o->name()] = {{"points", {rounded(ctx.points[0][0]), rounded(ctx.points[1][0])}},
                              {"weights", w}};
         }
         json out = {{"solo", solo}};
         try {
           joint_context({s1, s2}, state);
           out["joint"] = "constructed";
         } catch (const ContextIncompatible& e) {
           out["joint"] = {{"error", "ContextIncompatible"},
                           {"pair", {e.first, e.second}},
                           {"commutator_norm", rounded(e.commutator_norm)}};
         }
         return out;
       }},
      {"spin-norm", "spinlab", "<Psi(t)|Psi(t)> = 1 and the closed-form spinor",
       [](const ScenarioArgs&) {
         SpinSystem sys(Vec3(0.3, -0.4, 1.2));
         const Vec3 n = sys.axis();
         double norm_err = 0.0, closed_err = 0.0;
         for (int k = 0; k < 1000; ++k) {
           const double t = 0.013 * k;
           const CVector psi = evolve_state(sys, SpinState::down(), t).amplitudes();
           const CVector raw = evolution_operator(sys, t) * SpinState::down().amplitudes();
           norm_err = std::max(norm_err, std::abs(raw.squaredNorm() - 1.0));
           const double c = std::cos(sys.frequency() * t), s = std::sin(sys.frequency() * t);
           CVector expected(2);
           expected << Complex(c, -n(2) * s), kI * Complex(n(0), -n(1)) * s;
           closed_err = std::max(closed_err, (psi - expected).norm());
         }
         return json{{"norm_preserved", check(norm_err, 1e-12)},
                     {"matches_closed_form", check(closed_err, 1e-12)}};
       }},
      {"spin-precession-ode", "spinlab", "central differences of psi_i(t) against the precession law",
       [](const ScenarioArgs&) {
         SpinSystem sys(Vec3(0.7, -0.2, 0.5));
         const double t = 0.9;
         std::vector<double> errs;
         for (double h : {1e-2, 1e-3}) {
           double worst = 0.0;
           for (int i = 1; i <= 3; ++i) {
             CMatrix fd = (heisenberg_spin(sys, i, t + h) - heisenberg_spin(sys, i, t - h)) / (2 * h);
             worst = std::max(worst, max_abs(fd - precession_rate(sys, i, t)));
           }
           errs.push_back(worst);
         }
         const double order = std::log10(errs[0] / errs[1]);
         return json{{"order", std::round(order * 100.0) / 100.0}, {"order_at_least_1_9", order >= 1.9}};
       }},
      {"spin-corotating", "spinlab", "co-rotated psi3 keeps |Psi(t)> at eigenvalue -hbar/2",
       [](const ScenarioArgs&) {
         SpinSystem sys(Vec3(1.0, 2.0, -0.5));
         const double b = sys.frequency();
         json out = json::object();
         out["t0"] = check(corotating_eigencheck(sys, 0.0), 1e-10);
         out["t1.7_over_B"] = check(corotating_eigencheck(sys, 1.7 / b), 1e-10);
         out["full_period"] = check(corotating_eigencheck(sys, 2 * std::numbers::pi / b), 1e-10);
         const CVector psi = evolve_state(sys, SpinState::down(), 1.7 / b).amplitudes();
         out["measured_value"] =
             rounded(psi.dot(corotated_spin(sys, 3, 1.7 / b) * psi).real());
         return out;
       }},
      {"spin-orbit-x", "spinlab", "orbit of |0> about the x axis closes into a circle",
       [](const ScenarioArgs&) {
         SpinSystem sys(Vec3(1.0, 0.0, 0.0));
         const double b = sys.frequency(), dt = 0.01 / b;
         auto r = reachability_orbit(sys, SpinState::down(), dt, 700);
         json out = orbit_summary(r, 2 * std::numbers::pi / b, dt);
         out["expected_period"] = rounded(2 * std::numbers::pi / b);
         return out;
       }},
      {"spin-orbit-psi2", "spinlab",
       "orbit of the psi2 eigenstate versus the |0> orbit",
       [](const ScenarioArgs&) {
         json out = json::object();
         for (auto [name, axis] : {std::pair{"x_axis", Vec3(1.0, 0.0, 0.0)},
                                   std::pair{"diagonal_axis", Vec3(1.0, 1.0, 1.0)}}) {
           SpinSystem sys(axis);
           const double b = sys.frequency(), dt = 0.01 / b;
           auto psi2 = reachability_orbit(sys, SpinState::eigenstate(2, +1), dt, 700);
           auto down = reachability_orbit(sys, SpinState::down(), dt, 700);
           out[name] = {{"psi2_orbit", orbit_summary(psi2, 2 * std::numbers::pi / b, dt)},
                        {"down_orbit_offset", rounded(down.plane_offset)},
                        {"same_circle", std::abs(psi2.plane_offset - down.plane_offset) <= 1e-9}};
         }
         return out;
       }},
  };
  return all;
}

inline const Scenario& find(const std::string& name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw Error(Errc::UnknownScenario, name);
}

/// Canonical text of a scenario's output: 2-space indented JSON + newline.
inline std::string render(const Scenario& s, const ScenarioArgs& args = {}) {
  return s.run(args).dump(2) + "\n";
}

inline std::string golden_path(const std::string& dir, const std::string& name) {
  return dir + "/" + name + ".json";
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::GoldenMismatch, "no golden file at '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Empty when output and golden file agree byte for byte; otherwise a short
/// line-oriented description of the first difference.
inline std::string golden_diff(const std::string& actual, const std::string& golden) {
  if (actual == golden) return {};
  std::istringstream a(actual), g(golden);
  std::string la, lg;
  for (int line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hg = static_cast<bool>(std::getline(g, lg));
    if (!ha && !hg) return "outputs differ in trailing bytes";
    if (la != lg || ha != hg) {
      return "line " + std::to_string(line) + ": expected '" + (hg ? lg : "<eof>") +
             "', got '" + (ha ? la : "<eof>") + "'";
    }
  }
}

#ifdef EMERGENT_GOLDEN_DIR
inline constexpr const char* kDefaultGoldenDir = EMERGENT_GOLDEN_DIR;
#else
inline constexpr const char* kDefaultGoldenDir = "tests/golden";
#endif

}  // namespace emergent::scenarios
