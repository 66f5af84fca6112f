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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emergent/io.hpp"
#include "emergent/scenarios.hpp"

namespace emergent::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kDomainError = 2, kGoldenMismatch = 3 };

struct ToleranceProfile {
  double rank = kDefaultRankTolerance;
  double degeneracy = 1e-8;
  double commute = 1e-10;
  double orbit = 1e-6;
};

inline ToleranceProfile tolerance_profile(const std::string& name) {
  if (name == "default") return {};
  if (name == "strict") return {1e-12, 1e-10, 1e-12, 1e-9};
  throw Error(Errc::InvalidArgument, "tolerance profile '" + name + "'");
}

/// Which subcommand exposes each library operation.
struct OperationEntry {
  const char* module;
  const char* operation;
  const char* subcommand;
};

inline const std::vector<OperationEntry>& operation_registry() {
  static const std::vector<OperationEntry> ops = {
      {"dynsys", "build_system", "reach"},
      {"dynsys", "evolve", "reach"},
      {"dynsys", "trajectory", "reach"},
      {"dynsys", "reach", "reach"},
      {"pretopology", "classify_subset", "topology"},
      {"pretopology", "closed_family", "topology"},
      {"pretopology", "check_axioms", "topology"},
      {"pretopology", "interior", "topology"},
      {"sigma_measure", "generate_sigma", "sigma"},
      {"sigma_measure", "sigma_from_reachability", "sigma"},
      {"sigma_measure", "expectation", "measure"},
      {"sigma_measure", "validate_measure", "measure"},
      {"star_gns", "adjoint", "scenario"},
      {"star_gns", "commutator", "scenario"},
      {"star_gns", "is_self_adjoint", "context"},
      {"star_gns", "gns", "gns"},
      {"star_gns", "truncated_oscillator", "gns"},
      {"context", "spectral_context", "context"},
      {"context", "commutes", "context"},
      {"context", "joint_context", "context"},
      {"context", "gelfand_points", "context"},
      {"spinlab", "evolution_operator", "spin"},
      {"spinlab", "evolve_state", "spin"},
      {"spinlab", "heisenberg_spin", "spin"},
      {"spinlab", "corotating_eigencheck", "spin"},
      {"spinlab", "reachability_orbit", "spin"},
      {"cli", "run_scenario", "scenario"},
      {"cli", "parse_system", "reach"},
      {"cli", "parse_matrix", "context"},
      {"cli", "parse_properties", "sigma"},
  };
  return ops;
}

inline const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "reach", "topology", "sigma", "measure", "gns", "context", "spin", "scenario"};
  return names;
}

namespace detail {

struct Options {
  std::uint64_t seed = 0;
  std::string profile = "default";
  std::string out_file;

  std::string system_file;
  std::string elements;
  std::string subset;
  std::optional<std::int64_t> horizon;
  std::string evolve_label;
  std::int64_t time = 1;
  std::string trajectory_label;
  bool saturate = false;
  bool sampled = false;

  std::vector<std::string> property_files;
  bool from_reachability = false;
  bool list_sets = false;
  std::string weights_file;
  std::string function_file;

  std::string algebra_file;
  std::string state_file;
  int oscillator = 0;

  std::vector<std::string> observable_files;
  bool joint = false;
  bool gelfand = false;

  std::string field = "0,0,1";
  double g = 2.0, charge = 1.0, mass = 1.0, hbar = 1.0;
  bool si = false;
  std::string state0 = "down";
  double dt = 0.01;
  int steps = 700;
  std::string csv_file;
  std::string spin_context;
  std::optional<double> at;
  bool absolute_time = false;

  std::string scenario;
  bool check = false;
  bool write_golden = false;
  bool list = false;
  bool all = false;
  std::string golden_dir = scenarios::kDefaultGoldenDir;
  int levels = 4;
};

inline Elements elements_for(const Options& o) {
  if (!o.system_file.empty()) return io::parse_system(io::read_file(o.system_file)).elements();
  if (!o.elements.empty()) {
    std::vector<std::string> labels;
    std::stringstream ss(o.elements);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) labels.push_back(item);
    }
    return Elements(labels);
  }
  throw Error(Errc::InvalidArgument, "need --system or --elements");
}

inline SigmaAlgebra algebra_for(const Options& o) {
  if (o.from_reachability) {
    if (o.system_file.empty()) throw Error(Errc::InvalidArgument, "--from-reachability needs --system");
    auto sys = io::parse_system(io::read_file(o.system_file));
    return sigma_from_reachability(sys, o.horizon.value_or(sys.time().horizon));
  }
  const auto elements = elements_for(o);
  std::vector<PropertyFn> props;
  for (const auto& f : o.property_files) {
    auto more = io::parse_properties(io::read_file(f));
    props.insert(props.end(), more.begin(), more.end());
  }
  return generate_sigma(props, elements);
}

inline json run_reach(const Options& o) {
  auto sys = io::parse_system(io::read_file(o.system_file));
  const auto horizon = o.horizon.value_or(sys.time().horizon);
  json out = {{"elements", sys.elements().labels()},
              {"time", std::string(time_kind_name(sys.time().kind))}};
  if (!o.evolve_label.empty()) {
    out["evolve"] = {{"x", o.evolve_label}, {"t", o.time},
                     {"result", evolve(sys, o.evolve_label, o.time)}};
  }
  if (!o.trajectory_label.empty()) {
    out["trajectory"] = {{"x0", o.trajectory_label}, {"horizon", horizon},
                         {"states", trajectory(sys, o.trajectory_label, horizon)}};
  }
  if (!o.subset.empty() || (o.evolve_label.empty() && o.trajectory_label.empty())) {
    auto r = reach(sys, io::parse_subset(sys.elements(), o.subset), horizon);
    out["source"] = io::subset_to_json(r.source, sys.elements());
    out["horizon"] = r.horizon;
    out["closure"] = io::subset_to_json(r.members, sys.elements());
  }
  return out;
}

inline json run_topology(const Options& o) {
  auto sys = io::parse_system(io::read_file(o.system_file));
  const auto fixed = o.horizon.value_or(sys.time().horizon);
  CheckOptions check;
  check.allow_sampling = o.sampled;
  check.seed = o.seed;
  auto one = [&](std::int64_t horizon) -> json {
    if (!o.subset.empty()) {
      auto x0 = io::parse_subset(sys.elements(), o.subset);
      return io::closure_report_to_json(classify_subset(sys, x0, horizon), sys.elements());
    }
    return io::verdict_to_json(check_axioms(sys, horizon, check), sys.elements());
  };
  if (!o.saturate) return one(fixed);
  return {{"fixed_horizon", one(fixed)},
          {"saturation_horizon", one(static_cast<std::int64_t>(sys.size()))}};
}

inline json run_sigma(const Options& o) {
  return io::sigma_to_json(algebra_for(o), o.list_sets);
}

inline json run_measure(const Options& o) {
  const auto algebra = algebra_for(o);
  const auto doc = io::read_file(o.weights_file);
  const auto m = io::parse_measure(doc, algebra);
  json out = {{"atoms", io::family_to_json(algebra.atoms(), algebra.elements())},
              {"weights", m.atom_weights()},
              {"report", io::measure_report_to_json(validate_measure(m))}};
  std::optional<std::map<std::string, double>> f;
  if (!o.function_file.empty()) {
    f = io::parse_function(io::read_file(o.function_file), "");
  } else if (doc.contains("function")) {
    f = io::parse_function(doc.at("function"), "/function");
  }
  if (f) out["expectation"] = expectation(*f, m);
  return out;
}

inline json run_gns(const Options& o, const ToleranceProfile& tol) {
  if (o.oscillator > 0) {
    auto osc = truncated_oscillator(o.oscillator);
    const auto& rep = osc.representation;
    json out = io::gns_to_json(rep);
    out["levels"] = o.oscillator;
    out["ground_number_expectation"] = osc.ground(osc.creation * osc.annihilation).real();
    out["pi_a_omega_norm"] = rep.vector_of(osc.annihilation).norm();
    const CMatrix ladder = osc.ladder(o.oscillator - 1);
    out["ladder_orthonormality_error"] =
        max_abs(ladder.adjoint() * ladder - identity(o.oscillator - 1));
    out["commutator"] = io::matrix_to_json(commutator(osc.annihilation, osc.creation));
    return out;
  }
  if (o.algebra_file.empty() || o.state_file.empty()) {
    throw Error(Errc::InvalidArgument, "gns needs --algebra and --state, or --oscillator N");
  }
  auto algebra = io::parse_algebra(io::read_file(o.algebra_file));
  auto state = io::parse_state(io::read_file(o.state_file));
  return io::gns_to_json(gns(algebra, state, tol.rank));
}

inline json run_context(const Options& o, const ToleranceProfile& tol) {
  if (o.observable_files.empty()) throw Error(Errc::InvalidArgument, "need --observables");
  std::vector<Observable> obs;
  for (std::size_t i = 0; i < o.observable_files.size(); ++i) {
    obs.push_back(io::parse_observable(io::read_file(o.observable_files[i]),
                                       "a" + std::to_string(i)));
  }
  ContextOptions copt;
  copt.degeneracy_relative = tol.degeneracy;
  copt.commute_tolerance = tol.commute;
  copt.seed = o.seed ^ 0x5eed;
  if (o.gelfand) {
    json points = json::array();
    for (const auto& c : gelfand_points(obs, copt)) points.push_back(c.point);
    return {{"points", points}};
  }
  if (o.state_file.empty()) throw Error(Errc::InvalidArgument, "need --state");
  auto state = io::parse_state(io::read_file(o.state_file));
  if (o.joint || obs.size() == 1) {
    return io::context_to_json(obs.size() == 1 ? spectral_context(obs[0], state, copt)
                                               : joint_context(obs, state, copt),
                               state, obs);
  }
  json contexts = json::array();
  for (const auto& a : obs) contexts.push_back(io::context_to_json(spectral_context(a, state, copt), state, {a}));
  json table = json::array();
  for (const auto& a : obs) {
    json row = json::array();
    for (const auto& b : obs) row.push_back(commutes(a, b, tol.commute));
    table.push_back(row);
  }
  return {{"contexts", contexts}, {"commutes", table}};
}

inline SpinState named_spin_state(const std::string& name) {
  if (name == "down") return SpinState::down();
  if (name == "up") return SpinState::up();
  if (name.size() == 2 && (name[1] == '+' || name[1] == '-')) {
    const int sign = name[1] == '+' ? 1 : -1;
    switch (name[0]) {
      case 'x': return SpinState::eigenstate(1, sign);
      case 'y': return SpinState::eigenstate(2, sign);
      case 'z': return SpinState::eigenstate(3, sign);
      default: break;
    }
  }
  throw Error(Errc::InvalidArgument, "unknown state '" + name + "'");
}

inline json run_spin(const Options& o, const ToleranceProfile& tol) {
  const Vec3 field = io::parse_vec3(o.field);
  SpinSystem sys = o.si ? SpinSystem::electron_si(field, o.g)
                        : SpinSystem(field, o.g, o.charge, o.mass, o.hbar);
  SpinState psi0 = named_spin_state(o.state0);
  if (o.spin_context == "psi2") psi0 = SpinState::eigenstate(2, +1);
  if (o.spin_context == "psi3" || o.spin_context == "corotating") psi0 = SpinState::down();
  if (!o.spin_context.empty() && o.spin_context != "psi2" && o.spin_context != "psi3" &&
      o.spin_context != "corotating") {
    throw Error(Errc::InvalidArgument, "unknown --context '" + o.spin_context + "'");
  }
  const double dt = o.absolute_time ? o.dt : o.dt / sys.frequency();
  auto orbit = reachability_orbit(sys, psi0, dt, o.steps, tol.orbit);
  json out = io::orbit_to_json(orbit);
  out["frequency"] = sys.frequency();
  out["dt"] = dt;
  out["spinor_period"] = 2.0 * std::numbers::pi / sys.frequency();
  out["initial_state"] = io::vector_to_json(psi0.amplitudes());
  if (!o.spin_context.empty()) out["context"] = o.spin_context;
  if (o.spin_context == "corotating") {
    double worst = 0.0;
    for (const auto& s : orbit.samples) worst = std::max(worst, corotating_eigencheck(sys, s.t));
    out["corotating_max_residual"] = worst;
    out["corotating_value"] = -0.5 * sys.hbar();
  }
  if (o.at) {
    const double t = *o.at;
    json heis = json::array();
    for (int i = 1; i <= 3; ++i) heis.push_back(io::matrix_to_json(heisenberg_spin(sys, i, t)));
    out["at"] = {{"t", t},
                 {"evolution_operator", io::matrix_to_json(evolution_operator(sys, t))},
                 {"state", io::vector_to_json(evolve_state(sys, psi0, t).amplitudes())},
                 {"bloch", io::vec3_to_json(bloch_vector(evolve_state(sys, psi0, t)))},
                 {"heisenberg_spin", heis},
                 {"corotating_residual", corotating_eigencheck(sys, t)}};
  }
  if (!o.csv_file.empty()) {
    std::ofstream csv(o.csv_file, std::ios::binary);
    if (!csv) throw Error(Errc::InvalidArgument, "cannot write '" + o.csv_file + "'");
    csv << io::orbit_csv(orbit);
  }
  return out;
}

inline std::string golden_name(const std::string& name, const scenarios::ScenarioArgs& args) {
  if (name == "oscillator" && args.levels != 4) return name + "-N" + std::to_string(args.levels);
  return name;
}

inline int run_scenario(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.list) {
    for (const auto& s : scenarios::registry()) out << s.name << "\t" << s.module << "\t" << s.summary << "\n";
    return kOk;
  }
  std::vector<std::string> names;
  if (o.all) {
    for (const auto& s : scenarios::registry()) names.push_back(s.name);
  } else {
    if (o.scenario.empty()) throw Error(Errc::InvalidArgument, "scenario name required");
    names.push_back(o.scenario);
  }
  scenarios::ScenarioArgs args;
  args.levels = o.levels;
  int status = kOk;
  for (const auto& name : names) {
    const auto& s = scenarios::find(name);
    const std::string text = scenarios::render(s, args);
    const std::string path = scenarios::golden_path(o.golden_dir, golden_name(name, args));
    if (o.write_golden) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
      f << text;
      err << "wrote " << path << "\n";
    } else if (o.check) {
      const auto diff = scenarios::golden_diff(text, scenarios::read_text(path));
      if (!diff.empty()) {
        err << "GoldenMismatch: " << name << ": " << diff << "\n";
        status = kGoldenMismatch;
      } else if (o.all) {
        err << "ok " << name << "\n";
      }
    }
    if (!o.all && !o.write_golden) out << text;
  }
  return status;
}

}  // namespace detail

/// Runs the command line. JSON goes to out (or --out FILE), diagnostics to
/// err. Exit codes: 0 ok, 1 input error, 2 domain error, 3 golden mismatch.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Space from dynamics and observation: reachability closures, "
               "sigma-algebras, GNS representations, spectral contexts and spin precession.",
               "emergent-space"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", o.seed, "Seed for sampling and diagonalization retries");
  app.add_option("--tolerance-profile", o.profile, "default or strict")
      ->check(CLI::IsMember({"default", "strict"}));
  app.add_option("--out", o.out_file, "Write JSON output to FILE");

  auto* reach_cmd = app.add_subcommand("reach", "Evolve states and compute reachability domains");
  reach_cmd->add_option("--system", o.system_file, "System JSON")->required();
  reach_cmd->add_option("--subset", o.subset, "Initial region, e.g. \"1,2,3\"");
  reach_cmd->add_option("--horizon", o.horizon, "Time horizon (default: from system)");
  reach_cmd->add_option("--evolve", o.evolve_label, "Evolve this state");
  reach_cmd->add_option("--time", o.time, "Time for --evolve");
  reach_cmd->add_option("--trajectory", o.trajectory_label, "Trajectory from this state");

  auto* topo = app.add_subcommand("topology", "Closed/open classification and topology verdict");
  topo->add_option("--system", o.system_file, "System JSON")->required();
  topo->add_option("--horizon", o.horizon, "Time horizon (default: from system)");
  topo->add_option("--subset", o.subset, "Classify this region instead of the whole family");
  topo->add_flag("--saturate", o.saturate, "Also report at the saturation horizon |X|");
  topo->add_flag("--sampled", o.sampled, "Allow sampled verdicts above 20 states");

  auto* sigma = app.add_subcommand("sigma", "Sigma-algebra from properties or reachability");
  sigma->add_option("--system", o.system_file, "System JSON");
  sigma->add_option("--elements", o.elements, "Comma separated element labels");
  sigma->add_option("--properties", o.property_files, "Property JSON files");
  sigma->add_flag("--from-reachability", o.from_reachability, "Generate from reachability domains");
  sigma->add_option("--horizon", o.horizon, "Horizon for --from-reachability");
  sigma->add_flag("--list-sets", o.list_sets, "Emit every member set");

  auto* measure = app.add_subcommand("measure", "Validate a measure and integrate a function");
  measure->add_option("--system", o.system_file, "System JSON");
  measure->add_option("--elements", o.elements, "Comma separated element labels");
  measure->add_option("--properties", o.property_files, "Property JSON files");
  measure->add_flag("--from-reachability", o.from_reachability, "Generate from reachability domains");
  measure->add_option("--horizon", o.horizon, "Horizon for --from-reachability");
  measure->add_option("--weights", o.weights_file, "Atom weights JSON")->required();
  measure->add_option("--function", o.function_file, "Function JSON {label: value}");

  auto* gns_cmd = app.add_subcommand("gns", "GNS representation of an algebra and a state");
  gns_cmd->add_option("--algebra", o.algebra_file, "Algebra JSON");
  gns_cmd->add_option("--state", o.state_file, "State JSON");
  gns_cmd->add_option("--oscillator", o.oscillator, "Truncated oscillator with N levels");

  auto* ctx = app.add_subcommand("context", "Measure spaces induced by observables");
  ctx->add_option("--state", o.state_file, "State JSON");
  ctx->add_option("--observables", o.observable_files, "Observable JSON files")->required();
  ctx->add_flag("--joint", o.joint, "Joint context of a commuting family");
  ctx->add_flag("--gelfand", o.gelfand, "Joint spectrum (points) of a commuting family");

  auto* spin = app.add_subcommand("spin", "Spin precession orbit on the Bloch sphere");
  spin->add_option("--field", o.field, "Field vector \"bx,by,bz\"");
  spin->add_option("--g", o.g, "g-factor");
  spin->add_option("--charge", o.charge, "Charge");
  spin->add_option("--mass", o.mass, "Mass");
  spin->add_option("--hbar", o.hbar, "Reduced Planck constant");
  spin->add_flag("--si", o.si, "Electron constants in SI units");
  spin->add_option("--state0", o.state0, "down, up, x+, x-, y+, y-, z+, z-");
  spin->add_option("--dt", o.dt, "Sample spacing, in units of 1/B~ unless --absolute-time");
  spin->add_flag("--absolute-time", o.absolute_time, "Read --dt as plain time");
  spin->add_option("--steps", o.steps, "Number of steps");
  spin->add_option("--out,--csv", o.csv_file, "Write t,bx,by,bz samples as CSV");
  spin->add_option("--context", o.spin_context, "psi2, psi3 or corotating");
  spin->add_option("--at", o.at, "Also report U, state and Heisenberg spins at this time");

  auto* scen = app.add_subcommand("scenario", "Run a packaged worked example");
  scen->add_option("name", o.scenario, "Scenario name");
  scen->add_flag("--check", o.check, "Compare against the golden file");
  scen->add_flag("--write-golden", o.write_golden, "Regenerate the golden file");
  scen->add_flag("--list", o.list, "List scenarios");
  scen->add_flag("--all", o.all, "Run every scenario");
  scen->add_option("--golden-dir", o.golden_dir, "Golden file directory");
  scen->add_option("--N", o.levels, "Oscillator levels")->check(CLI::Range(2, 64));

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInputError;
  }

  try {
    const auto tol = tolerance_profile(o.profile);
    if (scen->parsed()) {
      if (!o.out_file.empty()) {
        std::ofstream f(o.out_file, std::ios::binary);
        return detail::run_scenario(o, f, err);
      }
      return detail::run_scenario(o, out, err);
    }
    json result;
    if (reach_cmd->parsed()) result = detail::run_reach(o);
    else if (topo->parsed()) result = detail::run_topology(o);
    else if (sigma->parsed()) result = detail::run_sigma(o);
    else if (measure->parsed()) result = detail::run_measure(o);
    else if (gns_cmd->parsed()) result = detail::run_gns(o, tol);
    else if (ctx->parsed()) result = detail::run_context(o, tol);
    else if (spin->parsed()) result = detail::run_spin(o, tol);
    const std::string text = result.dump(2) + "\n";
    if (!o.out_file.empty()) {
      std::ofstream f(o.out_file, std::ios::binary);
      if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + o.out_file + "'");
      f << text;
    } else {
      out << text;
    }
    return kOk;
  } catch (const Error& e) {
    err << e.what() << "\n";
    if (e.code() == Errc::GoldenMismatch) return kGoldenMismatch;
    return is_domain_error(e.code()) ? kDomainError : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace emergent::cli
