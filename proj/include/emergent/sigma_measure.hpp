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
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "emergent/dynsys.hpp"
#include "emergent/pretopology.hpp"

namespace emergent {

inline constexpr double kMeasureTolerance = 1e-12;

/// Binary observational distinction p : X -> {0,1}.
struct PropertyFn {
  std::string name;
  std::map<std::string, int> truth;
};

/// Finite sigma-algebra stored by its atoms. Members are exactly the unions
/// of atoms.
class SigmaAlgebra {
 public:
  SigmaAlgebra() = default;

  /// Atoms are the classes of the joint membership fingerprint.
  static SigmaAlgebra from_generators(const Elements& elements,
                                      const std::vector<Subset>& generators) {
    const auto n = elements.size();
    for (const auto& g : generators) {
      if (g.universe() != n) {
        throw Error(Errc::InvalidSubset, "generator over a different universe");
      }
    }
    std::map<std::vector<bool>, std::uint64_t> classes;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<bool> fingerprint;
      fingerprint.reserve(generators.size());
      for (const auto& g : generators) fingerprint.push_back(g.contains(x));
      classes[fingerprint] |= std::uint64_t{1} << x;
    }
    SigmaAlgebra a;
    a.elements_ = elements;
    for (const auto& [_, bits] : classes) a.atoms_.emplace_back(bits, n);
    sort_canonical(a.atoms_);
    a.index_atoms();
    return a;
  }

  const Elements& elements() const noexcept { return elements_; }
  const std::vector<Subset>& atoms() const noexcept { return atoms_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t atom_of(std::size_t element) const { return atom_index_.at(element); }

  bool contains(const Subset& s) const {
    if (s.universe() != elements_.size()) return false;
    for (const auto& a : atoms_) {
      if (!a.subset_of(s) && !a.disjoint(s)) return false;
    }
    return true;
  }

  /// 2^|atoms|.
  std::uint64_t set_count() const {
    if (atoms_.size() >= 64) {
      throw Error(Errc::StateSpaceTooLarge, "2^" + std::to_string(atoms_.size()) +
                                                " members do not fit a counter");
    }
    return std::uint64_t{1} << atoms_.size();
  }

  /// All members in canonical order.
  std::vector<Subset> sets() const {
    if (atoms_.size() > kExhaustiveCap) {
      throw Error(Errc::StateSpaceTooLarge,
                  std::to_string(atoms_.size()) + " atoms are too many to list");
    }
    const auto n = elements_.size();
    std::vector<Subset> out;
    out.reserve(std::size_t{1} << atoms_.size());
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << atoms_.size());
         ++choice) {
      std::uint64_t bits = 0;
      for (std::size_t k = 0; k < atoms_.size(); ++k) {
        if ((choice >> k) & 1u) bits |= atoms_[k].bits();
      }
      out.emplace_back(bits, n);
    }
    sort_canonical(out);
    return out;
  }

  bool operator==(const SigmaAlgebra& o) const {
    return elements_ == o.elements_ && atoms_ == o.atoms_;
  }

 private:
  void index_atoms() {
    atom_index_.assign(elements_.size(), 0);
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      for (auto i : atoms_[k].indices()) atom_index_[i] = k;
    }
  }

  Elements elements_;
  std::vector<Subset> atoms_;
  std::vector<std::size_t> atom_index_;
};

inline Subset property_set(const PropertyFn& p, const Elements& elements) {
  std::uint64_t bits = 0;
  for (const auto& [label, value] : p.truth) {
    auto idx = elements.find(label);
    if (!idx) {
      throw Error(Errc::UnknownLabel,
                  "property '" + p.name + "' mentions '" + label + "'");
    }
    if (value != 0 && value != 1) {
      throw Error(Errc::InvalidArgument, "property '" + p.name +
                                             "' has non-binary value at '" +
                                             label + "'");
    }
    if (value == 1) bits |= std::uint64_t{1} << *idx;
  }
  if (p.truth.size() != elements.size()) {
    throw Error(Errc::PartialProperty, p.name);
  }
  return {bits, elements.size()};
}

/// Sigma-algebra generated by binary properties; with none it is {∅, X}.
inline SigmaAlgebra generate_sigma(const std::vector<PropertyFn>& properties,
                                   const Elements& elements) {
  std::vector<Subset> generators;
  generators.reserve(properties.size());
  for (const auto& p : properties) generators.push_back(property_set(p, elements));
  return SigmaAlgebra::from_generators(elements, generators);
}

/// Smallest sigma-algebra containing every reachability domain at horizon T.
/// Closure preserves unions, so single-point domains generate the same
/// algebra as all 2^|X| domains.
inline SigmaAlgebra sigma_from_reachability(const DynamicalSystem& sys,
                                            std::int64_t horizon) {
  if (sys.size() > kExhaustiveCap) {
    throw Error(Errc::StateSpaceTooLarge,
                "|X| = " + std::to_string(sys.size()) + " exceeds " +
                    std::to_string(kExhaustiveCap));
  }
  std::vector<Subset> generators;
  for (std::size_t x = 0; x < sys.size(); ++x) {
    generators.push_back(closure(sys, Subset::singleton(x, sys.size()), horizon));
  }
  return SigmaAlgebra::from_generators(sys.elements(), generators);
}

/// Measure given on atoms and extended additively.
class Measure {
 public:
  Measure(SigmaAlgebra algebra, std::vector<double> atom_weights,
          bool probabilistic = true)
      : algebra_(std::move(algebra)),
        weights_(std::move(atom_weights)),
        probabilistic_(probabilistic) {
    if (weights_.size() != algebra_.atom_count()) {
      throw Error(Errc::InvalidArgument,
                  std::to_string(weights_.size()) + " weights for " +
                      std::to_string(algebra_.atom_count()) + " atoms");
    }
    for (double w : weights_) {
      if (!std::isfinite(w)) throw Error(Errc::InvalidArgument, "non-finite weight");
    }
  }

  /// Weights assigned to explicit atoms; atoms not mentioned get zero.
  /// Anything that is not an atom is rejected.
  static Measure from_assignments(
      const SigmaAlgebra& algebra,
      const std::vector<std::pair<Subset, double>>& assignments,
      bool probabilistic = true) {
    std::vector<double> w(algebra.atom_count(), 0.0);
    for (const auto& [set, weight] : assignments) {
      const auto& atoms = algebra.atoms();
      auto it = std::find(atoms.begin(), atoms.end(), set);
      if (it == atoms.end()) {
        throw Error(Errc::NotMeasurable, "weights may only be set on atoms");
      }
      w[static_cast<std::size_t>(it - atoms.begin())] = weight;
    }
    return {algebra, std::move(w), probabilistic};
  }

  static Measure uniform_over_atoms(const SigmaAlgebra& algebra) {
    const auto k = algebra.atom_count();
    return {algebra, std::vector<double>(k, 1.0 / static_cast<double>(k))};
  }

  static Measure uniform_over_elements(const SigmaAlgebra& algebra) {
    std::vector<double> w;
    const double n = static_cast<double>(algebra.elements().size());
    for (const auto& a : algebra.atoms()) w.push_back(static_cast<double>(a.count()) / n);
    return {algebra, std::move(w)};
  }

  const SigmaAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<double>& atom_weights() const noexcept { return weights_; }
  bool probabilistic() const noexcept { return probabilistic_; }

  double operator()(const Subset& s) const {
    if (!algebra_.contains(s)) {
      throw Error(Errc::NotMeasurable, "set is not a union of atoms");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (algebra_.atoms()[k].subset_of(s)) total += weights_[k];
    }
    return total;
  }

 private:
  SigmaAlgebra algebra_;
  std::vector<double> weights_;
  bool probabilistic_;
};

struct MeasureReport {
  bool non_negative = true;
  std::vector<std::size_t> negative_atoms;
  bool additive = true;
  double additivity_error = 0.0;
  double total = 0.0;
  double normalization_deviation = 0.0;
  bool normalized = false;
};

inline MeasureReport validate_measure(const Measure& m) {
  MeasureReport r;
  const auto& w = m.atom_weights();
  const auto& atoms = m.algebra().atoms();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] < 0.0) {
      r.non_negative = false;
      r.negative_atoms.push_back(k);
    }
    r.total += w[k];
  }
  // Additivity on every pair of distinct atoms, evaluated through the set
  // function rather than the stored weights.
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      double err = std::abs(m(atoms[i] | atoms[j]) - m(atoms[i]) - m(atoms[j]));
      r.additivity_error = std::max(r.additivity_error, err);
    }
  }
  r.additive = r.additivity_error <= kMeasureTolerance;
  r.normalization_deviation = std::abs(r.total - 1.0);
  r.normalized = r.normalization_deviation <= kMeasureTolerance;
  return r;
}

/// Integral of f against a probability measure. Each element carries an
/// equal share of its atom's weight.
inline double expectation(const std::map<std::string, double>& f,
                          const Measure& m) {
  const auto report = validate_measure(m);
  if (!m.probabilistic() || !report.normalized || !report.non_negative) {
    throw Error(Errc::NotProbabilistic,
                "total " + std::to_string(report.total));
  }
  const auto& elements = m.algebra().elements();
  if (f.size() != elements.size()) {
    throw Error(Errc::PartialFunction,
                std::to_string(f.size()) + " values for " +
                    std::to_string(elements.size()) + " elements");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < elements.size(); ++x) {
    auto it = f.find(elements.label(x));
    if (it == f.end()) throw Error(Errc::PartialFunction, elements.label(x));
    const auto k = m.algebra().atom_of(x);
    const double share = m.atom_weights()[k] /
                         static_cast<double>(m.algebra().atoms()[k].count());
    total += it->second * share;
  }
  return total;
}

}  // namespace emergent
