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
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emergent/error.hpp"
#include "emergent/subset.hpp"

namespace emergent {

enum class TimeKind { MonoidSteps, GroupSteps };

struct TimeModel {
  TimeKind kind = TimeKind::MonoidSteps;
  std::int64_t horizon = 0;
};

inline std::string_view time_kind_name(TimeKind k) {
  return k == TimeKind::MonoidSteps ? "monoid" : "group";
}

/// Accepts "monoid" and "group". Partially ordered (branching) time is
/// rejected rather than approximated.
inline TimeKind parse_time_kind(std::string_view s) {
  if (s == "monoid") return TimeKind::MonoidSteps;
  if (s == "group") return TimeKind::GroupSteps;
  throw Error(Errc::UnsupportedTimeModel,
              "time kind '" + std::string(s) +
                  "' (only 'monoid' and 'group' are supported)");
}

/// Finite state set with a total unit-step map. Immutable once built.
class DynamicalSystem {
 public:
  const Elements& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const TimeModel& time() const noexcept { return time_; }

  std::size_t step(std::size_t i) const { return step_.at(i); }
  const std::vector<std::size_t>& step_map() const noexcept { return step_; }

  /// Image of a whole region under one unit step.
  Subset image(const Subset& s) const {
    std::uint64_t out = 0;
    for (std::uint64_t b = s.bits(); b != 0; b &= b - 1) {
      out |= step_mask_[static_cast<std::size_t>(std::countr_zero(b))];
    }
    return {out, size()};
  }

  /// U(x, t) on indices; negative t walks the inverse map (group time only).
  std::size_t evolve_index(std::size_t x, std::int64_t t) const {
    if (x >= size()) {
      throw Error(Errc::UnknownLabel, "index " + std::to_string(x));
    }
    if (t < 0 && time_.kind != TimeKind::GroupSteps) {
      throw Error(Errc::NegativeTimeInMonoid,
                  "t = " + std::to_string(t) + " under monoid time");
    }
    const auto& map = t < 0 ? inverse_ : step_;
    std::uint64_t remaining = t < 0 ? static_cast<std::uint64_t>(-(t + 1)) + 1
                                    : static_cast<std::uint64_t>(t);
    // Walk until a state repeats, then skip whole cycles.
    std::vector<std::int64_t> seen(size(), -1);
    std::uint64_t k = 0;
    while (remaining > 0) {
      if (seen[x] >= 0) {
        auto period = k - static_cast<std::uint64_t>(seen[x]);
        remaining %= period;
        std::fill(seen.begin(), seen.end(), -1);
        if (remaining == 0) break;
      }
      seen[x] = static_cast<std::int64_t>(k);
      x = map[x];
      ++k;
      --remaining;
    }
    return x;
  }

  friend DynamicalSystem build_system(const std::vector<std::string>&,
                                      const std::map<std::string, std::string>&,
                                      TimeModel);

 private:
  Elements elements_;
  std::vector<std::size_t> step_;
  std::vector<std::size_t> inverse_;
  std::vector<std::uint64_t> step_mask_;
  TimeModel time_;
};

/// Validates labels and transitions and builds the system. U(x,0)=x holds by
/// construction since time zero applies no step.
inline DynamicalSystem build_system(
    const std::vector<std::string>& labels,
    const std::map<std::string, std::string>& transitions, TimeModel time) {
  if (time.horizon < 0) {
    throw Error(Errc::InvalidArgument,
                "negative horizon " + std::to_string(time.horizon));
  }
  DynamicalSystem sys;
  sys.elements_ = Elements(labels);
  sys.time_ = time;
  const auto n = sys.elements_.size();
  sys.step_.resize(n);
  sys.step_mask_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& from = sys.elements_.label(i);
    auto it = transitions.find(from);
    if (it == transitions.end()) throw Error(Errc::MissingTransition, from);
    sys.step_[i] = sys.elements_.index_of(it->second);
    sys.step_mask_[i] = std::uint64_t{1} << sys.step_[i];
  }
  for (const auto& [from, to] : transitions) {
    if (!sys.elements_.find(from)) {
      throw Error(Errc::UnknownLabel, "transition source '" + from + "'");
    }
  }
  if (time.kind == TimeKind::GroupSteps) {
    sys.inverse_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sys.inverse_[sys.step_[i]] != n) {
        throw Error(Errc::NotInvertible,
                    "state '" + sys.elements_.label(sys.step_[i]) +
                        "' has more than one preimage");
      }
      sys.inverse_[sys.step_[i]] = i;
    }
  }
  return sys;
}

/// Builds a system from an index map; state i gets the label "i".
inline DynamicalSystem build_system_from_map(const std::vector<std::size_t>& step,
                                             TimeModel time = {}) {
  std::vector<std::string> labels;
  std::map<std::string, std::string> transitions;
  for (std::size_t i = 0; i < step.size(); ++i) labels.push_back(std::to_string(i));
  for (std::size_t i = 0; i < step.size(); ++i) {
    transitions[labels[i]] = std::to_string(step[i]);
  }
  return build_system(labels, transitions, time);
}

inline std::string evolve(const DynamicalSystem& sys, const std::string& x,
                          std::int64_t t) {
  auto idx = sys.elements().index_of(x);
  return sys.elements().label(sys.evolve_index(idx, t));
}

/// [U(x0,0), U(x0,1), ..., U(x0,T)] with repeats kept.
inline std::vector<std::string> trajectory(const DynamicalSystem& sys,
                                           const std::string& x0,
                                           std::int64_t horizon) {
  if (horizon < 0) {
    throw Error(Errc::InvalidArgument, "negative horizon");
  }
  auto x = sys.elements().index_of(x0);
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  out.push_back(sys.elements().label(x));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    x = sys.step(x);
    out.push_back(sys.elements().label(x));
  }
  return out;
}

inline void check_subset(const DynamicalSystem& sys, const Subset& s) {
  if (s.universe() != sys.size()) {
    throw Error(Errc::InvalidSubset,
                "subset over " + std::to_string(s.universe()) +
                    " states used with a system of " +
                    std::to_string(sys.size()));
  }
}

/// Reachability domain: union of all trajectories from the region up to T.
/// A trajectory on n states shows every state it will ever visit within its
/// first n steps, so horizons beyond |X| change nothing.
inline Subset closure(const DynamicalSystem& sys, const Subset& region,
                      std::int64_t horizon) {
  check_subset(sys, region);
  if (horizon < 0) throw Error(Errc::InvalidArgument, "negative horizon");
  const auto limit = std::min<std::int64_t>(horizon, static_cast<std::int64_t>(sys.size()));
  Subset members = region;
  Subset frontier = region;
  for (std::int64_t t = 1; t <= limit && !frontier.is_empty(); ++t) {
    frontier = sys.image(frontier);
    members = members | frontier;
  }
  return members;
}

struct ReachabilitySet {
  Subset source;
  std::int64_t horizon = 0;
  Subset members;
};

inline ReachabilitySet reach(const DynamicalSystem& sys, const Subset& region,
                             std::int64_t horizon) {
  return {region, horizon, closure(sys, region, horizon)};
}

}  // namespace emergent
