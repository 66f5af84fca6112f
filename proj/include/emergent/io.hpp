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
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "emergent/context.hpp"
#include "emergent/dynsys.hpp"
#include "emergent/pretopology.hpp"
#include "emergent/sigma_measure.hpp"
#include "emergent/spinlab.hpp"
#include "emergent/star_gns.hpp"

namespace emergent::io {

using nlohmann::json;

namespace detail {

inline std::string escape_pointer(const std::string& token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string type_of(const json& j) { return j.type_name(); }

inline const json& field(const json& obj, const std::string& path,
                         const std::string& key, const char* expected) {
  if (!obj.is_object()) throw SchemaError(path, "object", type_of(obj));
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, expected, "missing");
  return *it;
}

/// Labels may be JSON strings or integers; both normalize to strings.
inline std::string label_of(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SchemaError(path, "string or integer label", type_of(j));
}

inline double number_of(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "number", type_of(j));
  return j.get<double>();
}

}  // namespace detail

/// Parses text, turning syntax errors into SchemaError with the parser's
/// position message.
inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", "valid JSON", e.what());
  }
}

inline json read_file(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
  std::string text;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
  std::fclose(f);
  return parse_text(text);
}

// ---------------------------------------------------------------- systems

/// {"elements": [...], "transitions": {"1": "2", ...},
///  "time": {"kind": "monoid" | "group", "horizon": T}}
inline DynamicalSystem parse_system(const json& j) {
  const auto& elems = detail::field(j, "", "elements", "array of labels");
  if (!elems.is_array()) throw SchemaError("/elements", "array", detail::type_of(elems));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    labels.push_back(detail::label_of(elems[i], "/elements/" + std::to_string(i)));
  }
  const auto& trans = detail::field(j, "", "transitions", "object");
  if (!trans.is_object()) {
    throw SchemaError("/transitions", "object", detail::type_of(trans));
  }
  std::map<std::string, std::string> transitions;
  for (const auto& label : labels) {
    const auto ptr = "/transitions/" + detail::escape_pointer(label);
    auto it = trans.find(label);
    if (it == trans.end()) throw SchemaError(ptr, "target label", "missing");
    transitions[label] = detail::label_of(*it, ptr);
  }
  for (const auto& [key, _] : trans.items()) {
    if (!transitions.count(key)) {
      throw SchemaError("/transitions/" + detail::escape_pointer(key),
                        "a declared element", "unknown label");
    }
  }
  TimeModel time;
  if (auto it = j.find("time"); it != j.end()) {
    const auto& kind = detail::field(*it, "/time", "kind", "\"monoid\" or \"group\"");
    if (!kind.is_string()) throw SchemaError("/time/kind", "string", detail::type_of(kind));
    time.kind = parse_time_kind(kind.get<std::string>());
    if (auto h = it->find("horizon"); h != it->end()) {
      if (!h->is_number_integer() || h->get<long long>() < 0) {
        throw SchemaError("/time/horizon", "non-negative integer", h->dump());
      }
      time.horizon = h->get<long long>();
    }
  }
  return build_system(labels, transitions, time);
}

inline json system_to_json(const DynamicalSystem& sys) {
  json trans = json::object();
  for (std::size_t i = 0; i < sys.size(); ++i) {
    trans[sys.elements().label(i)] = sys.elements().label(sys.step(i));
  }
  return {{"elements", sys.elements().labels()},
          {"transitions", trans},
          {"time", {{"kind", std::string(time_kind_name(sys.time().kind))},
                    {"horizon", sys.time().horizon}}}};
}

/// Comma separated labels, e.g. "1,2,3". Empty text is the empty set.
inline Subset parse_subset(const Elements& elements, const std::string& text) {
  std::vector<std::string> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    labels.push_back(item.substr(b, e - b + 1));
  }
  return Subset::from_labels(elements, labels);
}

inline json subset_to_json(const Subset& s, const Elements& elements) {
  return s.labels(elements);
}

inline json family_to_json(const std::vector<Subset>& family, const Elements& elements) {
  json out = json::array();
  for (const auto& s : family) out.push_back(subset_to_json(s, elements));
  return out;
}

inline json closure_report_to_json(const ClosureReport& r, const Elements& e) {
  return {{"subset", subset_to_json(r.subset, e)},
          {"horizon", r.horizon},
          {"closure", subset_to_json(r.closure, e)},
          {"is_closed", r.is_closed},
          {"is_open", r.is_open},
          {"interior", subset_to_json(r.interior, e)}};
}

inline json verdict_to_json(const TopologyVerdict& v, const Elements& e) {
  return {{"horizon", v.horizon},
          {"closed_family", family_to_json(v.closed_family, e)},
          {"axioms", {{"empty_closed", v.axioms.empty_closed},
                      {"full_closed", v.axioms.full_closed},
                      {"closed_under_intersection", v.axioms.closed_under_intersection},
                      {"closed_under_union", v.axioms.closed_under_union}}},
          {"axioms_exhaustive", v.axioms_exhaustive},
          {"closure_idempotent", v.closure_idempotent},
          {"double_horizon_consistent", v.double_horizon_consistent},
          {"exhaustive", v.exhaustive},
          {"classification", classification_name(v.classification)}};
}

// ------------------------------------------------------------- properties

/// {"name": "even", "truth": {"1": 0, "2": 1, ...}}
inline PropertyFn parse_property(const json& j, const std::string& path = "") {
  PropertyFn p;
  const auto& name = detail::field(j, path, "name", "string");
  if (!name.is_string()) throw SchemaError(path + "/name", "string", detail::type_of(name));
  p.name = name.get<std::string>();
  const auto& truth = detail::field(j, path, "truth", "object");
  if (!truth.is_object()) {
    throw SchemaError(path + "/truth", "object", detail::type_of(truth));
  }
  for (const auto& [key, value] : truth.items()) {
    const auto ptr = path + "/truth/" + detail::escape_pointer(key);
    if (value.is_boolean()) {
      p.truth[key] = value.get<bool>() ? 1 : 0;
    } else if (value.is_number_integer() &&
               (value.get<int>() == 0 || value.get<int>() == 1)) {
      p.truth[key] = value.get<int>();
    } else {
      throw SchemaError(ptr, "0 or 1", value.dump());
    }
  }
  return p;
}

/// A single property object or an array of them.
inline std::vector<PropertyFn> parse_properties(const json& j) {
  std::vector<PropertyFn> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(parse_property(j[i], "/" + std::to_string(i)));
    }
  } else {
    out.push_back(parse_property(j));
  }
  return out;
}

inline json sigma_to_json(const SigmaAlgebra& a, bool with_sets) {
  json out = {{"atoms", family_to_json(a.atoms(), a.elements())},
              {"set_count", a.set_count()}};
  if (with_sets) out["sets"] = family_to_json(a.sets(), a.elements());
  return out;
}

/// {"atoms": [{"members": [...], "weight": w}, ...], "probabilistic": true,
///  "function": {"1": 1.0, ...}}
inline Measure parse_measure(const json& j, const SigmaAlgebra& algebra) {
  const auto& atoms = detail::field(j, "", "atoms", "array");
  if (!atoms.is_array()) throw SchemaError("/atoms", "array", detail::type_of(atoms));
  std::vector<std::pair<Subset, double>> assignments;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto path = "/atoms/" + std::to_string(i);
    const auto& members = detail::field(atoms[i], path, "members", "array of labels");
    if (!members.is_array()) {
      throw SchemaError(path + "/members", "array", detail::type_of(members));
    }
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < members.size(); ++k) {
      labels.push_back(detail::label_of(members[k], path + "/members/" + std::to_string(k)));
    }
    const double w = detail::number_of(detail::field(atoms[i], path, "weight", "number"),
                                       path + "/weight");
    assignments.emplace_back(Subset::from_labels(algebra.elements(), labels), w);
  }
  bool probabilistic = true;
  if (auto it = j.find("probabilistic"); it != j.end()) {
    if (!it->is_boolean()) throw SchemaError("/probabilistic", "boolean", detail::type_of(*it));
    probabilistic = it->get<bool>();
  }
  return Measure::from_assignments(algebra, assignments, probabilistic);
}

inline std::map<std::string, double> parse_function(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "object", detail::type_of(j));
  std::map<std::string, double> f;
  for (const auto& [key, value] : j.items()) {
    f[key] = detail::number_of(value, path + "/" + detail::escape_pointer(key));
  }
  return f;
}

inline json measure_report_to_json(const MeasureReport& r) {
  return {{"non_negative", r.non_negative},
          {"negative_atoms", r.negative_atoms},
          {"additive", r.additive},
          {"additivity_error", r.additivity_error},
          {"total", r.total},
          {"normalization_deviation", r.normalization_deviation},
          {"normalized", r.normalized}};
}

// --------------------------------------------------------------- matrices

/// Row-major array of rows; each entry is [re, im] (a bare number is real).
inline CMatrix parse_matrix(const json& j, const std::string& path = "") {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "non-empty array of rows", j.dump());
  const auto rows = j.size();
  std::size_t cols = 0;
  CMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto rp = path + "/" + std::to_string(r);
    const auto& row = j[r];
    if (!row.is_array()) throw SchemaError(rp, "array", detail::type_of(row));
    if (r == 0) {
      cols = row.size();
      m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    } else if (row.size() != cols) {
      throw SchemaError(rp, std::to_string(cols) + " entries", std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const auto ep = rp + "/" + std::to_string(c);
      const auto& e = row[c];
      Complex z;
      if (e.is_number()) {
        z = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        z = {detail::number_of(e[0], ep + "/0"), detail::number_of(e[1], ep + "/1")};
      } else {
        throw SchemaError(ep, "[re, im]", e.dump());
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
    }
  }
  return m;
}

inline json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    out.push_back(row);
  }
  return out;
}

inline json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

/// A bare matrix or {"name": ..., "matrix": ...}.
inline Observable parse_observable(const json& j, const std::string& fallback_name = "") {
  if (j.is_object()) {
    std::string name = fallback_name;
    if (auto it = j.find("name"); it != j.end() && it->is_string()) name = it->get<std::string>();
    return {parse_matrix(detail::field(j, "", "matrix", "matrix"), "/matrix"), name};
  }
  return {parse_matrix(j), fallback_name};
}

/// A density matrix (bare or under "density") or a pure state under "vector".
inline AlgState parse_state(const json& j) {
  if (j.is_object()) {
    if (auto it = j.find("vector"); it != j.end()) {
      if (!it->is_array() || it->empty()) throw SchemaError("/vector", "array", it->dump());
      CVector v(static_cast<Eigen::Index>(it->size()));
      for (std::size_t i = 0; i < it->size(); ++i) {
        const auto& e = (*it)[i];
        const auto p = "/vector/" + std::to_string(i);
        if (e.is_number()) {
          v(static_cast<Eigen::Index>(i)) = e.get<double>();
        } else if (e.is_array() && e.size() == 2) {
          v(static_cast<Eigen::Index>(i)) = Complex(detail::number_of(e[0], p + "/0"),
                                                    detail::number_of(e[1], p + "/1"));
        } else {
          throw SchemaError(p, "[re, im]", e.dump());
        }
      }
      if (v.norm() == 0.0) throw SchemaError("/vector", "non-zero vector", "zero");
      return AlgState::pure(v);
    }
    return AlgState(parse_matrix(detail::field(j, "", "density", "matrix"), "/density"));
  }
  return AlgState(parse_matrix(j));
}

/// {"generators": [m, ...]} (closed automatically) or {"basis": [m, ...]}.
inline StarAlgebra parse_algebra(const json& j) {
  auto list = [&](const char* key) {
    std::vector<CMatrix> out;
    const auto& arr = j.at(key);
    if (!arr.is_array()) throw SchemaError(std::string("/") + key, "array", detail::type_of(arr));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(parse_matrix(arr[i], std::string("/") + key + "/" + std::to_string(i)));
    }
    return out;
  };
  if (!j.is_object()) throw SchemaError("", "object", detail::type_of(j));
  if (j.contains("basis")) return StarAlgebra::from_basis(list("basis"));
  if (j.contains("generators")) return StarAlgebra::generated_by(list("generators"));
  throw SchemaError("/generators", "array of matrices", "missing");
}

inline json context_to_json(const SpectralContext& ctx, const AlgState& state,
                            const std::vector<Observable>& obs) {
  json points = json::array();
  for (const auto& p : ctx.points) {
    if (p.size() == 1) {
      points.push_back(p.front());
    } else {
      points.push_back(p);
    }
  }
  json expectation = json::array();
  json trace = json::array();
  for (std::size_t k = 0; k < obs.size(); ++k) {
    expectation.push_back(ctx.expectation(k));
    trace.push_back(state(obs[k].matrix()).real());
  }
  json out = {{"observables", ctx.names}, {"points", points}, {"weights", ctx.weights}};
  if (obs.size() == 1) {
    out["expectation"] = expectation.front();
    out["trace_expectation"] = trace.front();
  } else {
    out["expectation"] = expectation;
    out["trace_expectation"] = trace;
  }
  return out;
}

inline json gns_to_json(const GnsRepresentation& rep) {
  json eigs = json::array();
  for (Eigen::Index i = 0; i < rep.gram_eigenvalues().size(); ++i) {
    eigs.push_back(rep.gram_eigenvalues()(i));
  }
  return {{"algebra_dim", rep.algebra().size()},
          {"quotient_dim", rep.quotient_dim()},
          {"gram_eigenvalues", eigs},
          {"omega", vector_to_json(rep.omega_vector())},
          {"omega_norm_error", rep.omega_norm_error()},
          {"reproduction_residual", rep.reproduction_residual()},
          {"homomorphism_residual", rep.homomorphism_residual()},
          {"cyclic_rank", rep.cyclic_rank()}};
}

// ------------------------------------------------------------------- spin

inline Vec3 parse_vec3(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw SchemaError("--field", "number", "'" + item + "'");
    }
  }
  if (v.size() != 3) throw SchemaError("--field", "3 components", std::to_string(v.size()));
  return {v[0], v[1], v[2]};
}

inline json vec3_to_json(const Vec3& v) { return {v(0), v(1), v(2)}; }

inline json orbit_to_json(const OrbitReport& r) {
  json out = {{"classification", orbit_class_name(r.classification)},
              {"plane_axis", vec3_to_json(r.plane_axis)},
              {"plane_offset", r.plane_offset},
              {"radius", r.radius},
              {"great_circle", r.great_circle},
              {"axis_distance_spread", r.axis_distance_spread},
              {"max_norm_error", r.max_norm_error},
              {"sample_count", r.samples.size()}};
  out["period_estimate"] = r.period_estimate ? json(*r.period_estimate) : json(nullptr);
  out["bloch_period"] = r.bloch_period ? json(*r.bloch_period) : json(nullptr);
  return out;
}

/// "t,bx,by,bz" rows at 17 significant digits.
inline std::string orbit_csv(const OrbitReport& r) {
  std::string out = "t,bx,by,bz\n";
  char line[160];
  for (const auto& s : r.samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.bloch(0),
                  s.bloch(1), s.bloch(2));
    out += line;
  }
  return out;
}

}  // namespace emergent::io
