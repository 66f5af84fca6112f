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

#include <cstdint>
#include <random>
#include <vector>

#include "emergent/dynsys.hpp"

namespace emergent {

inline constexpr std::size_t kExhaustiveCap = 20;

struct ClosureReport {
  Subset subset;
  std::int64_t horizon = 0;
  Subset closure;
  bool is_closed = false;
  bool is_open = false;
  Subset interior;
};

/// Complement of the closure of the complement: the part of the region the
/// flow cannot enter from outside within the horizon.
inline Subset interior(const DynamicalSystem& sys, const Subset& region,
                       std::int64_t horizon) {
  check_subset(sys, region);
  return closure(sys, region.complement(), horizon).complement();
}

inline ClosureReport classify_subset(const DynamicalSystem& sys,
                                     const Subset& region,
                                     std::int64_t horizon) {
  check_subset(sys, region);
  ClosureReport r;
  r.subset = region;
  r.horizon = horizon;
  r.closure = closure(sys, region, horizon);
  r.is_closed = r.closure == region;
  const Subset comp = region.complement();
  const Subset comp_closure = closure(sys, comp, horizon);
  r.is_open = comp_closure == comp;
  r.interior = comp_closure.complement();
  return r;
}

namespace detail {

inline void require_exhaustive(const DynamicalSystem& sys) {
  if (sys.size() > kExhaustiveCap) {
    throw Error(Errc::StateSpaceTooLarge,
                "|X| = " + std::to_string(sys.size()) +
                    " exceeds the exhaustive cap " +
                    std::to_string(kExhaustiveCap));
  }
}

}  // namespace detail

/// Every subset whose reachability domain equals itself, in canonical order.
inline std::vector<Subset> closed_family(const DynamicalSystem& sys,
                                         std::int64_t horizon) {
  detail::require_exhaustive(sys);
  const auto n = sys.size();
  std::vector<Subset> family;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Subset s{bits, n};
    if (closure(sys, s, horizon) == s) family.push_back(s);
  }
  sort_canonical(family);
  return family;
}

enum class Classification { Topology, PreTopologyOnly };

inline const char* classification_name(Classification c) {
  return c == Classification::Topology ? "Topology" : "PreTopologyOnly";
}

struct AxiomRecord {
  bool empty_closed = false;
  bool full_closed = false;
  bool closed_under_intersection = false;
  bool closed_under_union = false;
};

struct TopologyVerdict {
  std::int64_t horizon = 0;
  std::vector<Subset> closed_family;
  AxiomRecord axioms;
  // False when pairwise union/intersection checks were sampled.
  bool axioms_exhaustive = true;
  bool closure_idempotent = false;
  // Diagnostic: cl_T(cl_T(S)) == cl_2T(S) for every tested S.
  bool double_horizon_consistent = false;
  // False when subsets were sampled instead of enumerated.
  bool exhaustive = true;
  Classification classification = Classification::PreTopologyOnly;
};

struct CheckOptions {
  bool allow_sampling = false;
  std::size_t samples = 4096;
  std::size_t max_exhaustive_pairs = std::size_t{1} << 26;
  std::size_t sampled_pairs = std::size_t{1} << 22;
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_pairs(const std::vector<Subset>& family,
                        const std::vector<bool>* membership,
                        const DynamicalSystem& sys, std::int64_t horizon,
                        const CheckOptions& opts, TopologyVerdict& v) {
  auto in_family = [&](const Subset& s) {
    if (membership) return static_cast<bool>((*membership)[s.bits()]);
    return closure(sys, s, horizon) == s;
  };
  bool uni = true, inter = true;
  const auto m = family.size();
  if (m * m <= opts.max_exhaustive_pairs) {
    for (std::size_t i = 0; i < m && (uni || inter); ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        uni = uni && in_family(family[i] | family[j]);
        inter = inter && in_family(family[i] & family[j]);
      }
    }
  } else {
    v.axioms_exhaustive = false;
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::size_t k = 0; k < opts.sampled_pairs && (uni || inter); ++k) {
      const auto& a = family[pick(rng)];
      const auto& b = family[pick(rng)];
      uni = uni && in_family(a | b);
      inter = inter && in_family(a & b);
    }
  }
  v.axioms.closed_under_union = uni;
  v.axioms.closed_under_intersection = inter;
}

}  // namespace detail

/// Decides whether the reachability closure at a fixed horizon is a
/// topological closure (idempotent) or only a pre-topological one.
inline TopologyVerdict check_axioms(const DynamicalSystem& sys,
                                    std::int64_t horizon,
                                    const CheckOptions& opts = {}) {
  const auto n = sys.size();
  TopologyVerdict v;
  v.horizon = horizon;
  const Subset none = Subset::empty(n);
  const Subset all = Subset::full(n);
  v.axioms.empty_closed = closure(sys, none, horizon) == none;
  v.axioms.full_closed = closure(sys, all, horizon) == all;

  bool idempotent = true;
  bool doubled = true;
  auto probe = [&](const Subset& s) {
    const Subset once = closure(sys, s, horizon);
    const Subset twice = closure(sys, once, horizon);
    idempotent = idempotent && twice == once;
    doubled = doubled && twice == closure(sys, s, 2 * horizon);
  };

  if (n <= kExhaustiveCap) {
    std::vector<bool> membership(std::size_t{1} << n, false);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      Subset s{bits, n};
      probe(s);
      if (closure(sys, s, horizon) == s) {
        membership[bits] = true;
        v.closed_family.push_back(s);
      }
    }
    sort_canonical(v.closed_family);
    detail::check_pairs(v.closed_family, &membership, sys, horizon, opts, v);
  } else {
    if (!opts.allow_sampling) detail::require_exhaustive(sys);
    v.exhaustive = false;
    v.axioms_exhaustive = false;
    std::mt19937_64 rng(opts.seed);
    const auto mask = Subset::full_mask(n);
    std::vector<Subset> invariant;
    for (std::size_t k = 0; k < opts.samples; ++k) {
      Subset s{rng() & mask, n};
      probe(s);
      // Saturated closures are always invariant.
      invariant.push_back(closure(sys, s, static_cast<std::int64_t>(n)));
    }
    detail::check_pairs(invariant, nullptr, sys, horizon, opts, v);
    v.axioms_exhaustive = false;
  }
  v.closure_idempotent = idempotent;
  v.double_horizon_consistent = doubled;
  v.classification =
      idempotent ? Classification::Topology : Classification::PreTopologyOnly;
  return v;
}

}  // namespace emergent
