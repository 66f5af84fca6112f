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

#include <stdexcept>
#include <string>
#include <string_view>

namespace emergent {

enum class Errc {
  DuplicateLabel,
  MissingTransition,
  NotInvertible,
  UnknownLabel,
  NegativeTimeInMonoid,
  UnsupportedTimeModel,
  InvalidSubset,
  StateSpaceTooLarge,
  PartialProperty,
  PartialFunction,
  NotProbabilistic,
  NotMeasurable,
  DimMismatch,
  NotAState,
  NonClosedAlgebra,
  NotSelfAdjoint,
  ContextIncompatible,
  BadAxis,
  ZeroField,
  HorizonTooShort,
  SchemaError,
  UnknownScenario,
  GoldenMismatch,
  InvalidArgument,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::MissingTransition: return "MissingTransition";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::NegativeTimeInMonoid: return "NegativeTimeInMonoid";
    case Errc::UnsupportedTimeModel: return "UnsupportedTimeModel";
    case Errc::InvalidSubset: return "InvalidSubset";
    case Errc::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case Errc::PartialProperty: return "PartialProperty";
    case Errc::PartialFunction: return "PartialFunction";
    case Errc::NotProbabilistic: return "NotProbabilistic";
    case Errc::NotMeasurable: return "NotMeasurable";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::NotAState: return "NotAState";
    case Errc::NonClosedAlgebra: return "NonClosedAlgebra";
    case Errc::NotSelfAdjoint: return "NotSelfAdjoint";
    case Errc::ContextIncompatible: return "ContextIncompatible";
    case Errc::BadAxis: return "BadAxis";
    case Errc::ZeroField: return "ZeroField";
    case Errc::HorizonTooShort: return "HorizonTooShort";
    case Errc::SchemaError: return "SchemaError";
    case Errc::UnknownScenario: return "UnknownScenario";
    case Errc::GoldenMismatch: return "GoldenMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when a family of observables has no common eigenbasis.
class ContextIncompatible : public Error {
 public:
  ContextIncompatible(std::size_t i, std::size_t j, double norm)
      : Error(Errc::ContextIncompatible,
              "observables " + std::to_string(i) + " and " +
                  std::to_string(j) + " do not commute (max |[a,b]| = " +
                  std::to_string(norm) + ")"),
        first(i), second(j), commutator_norm(norm) {}

  std::size_t first;
  std::size_t second;
  double commutator_norm;
};

/// Input-file validation failure located by a JSON pointer.
class SchemaError : public Error {
 public:
  SchemaError(std::string p, std::string exp, std::string g)
      : Error(Errc::SchemaError,
              "at " + (p.empty() ? std::string("/") : p) + ": expected " +
                  exp + ", got " + g),
        path(std::move(p)), expected(std::move(exp)), got(std::move(g)) {}

  std::string path;
  std::string expected;
  std::string got;
};

// Domain errors map to CLI exit code 2, everything else to 1.
inline bool is_domain_error(Errc code) {
  switch (code) {
    case Errc::ContextIncompatible:
    case Errc::StateSpaceTooLarge:
    case Errc::NotInvertible:
    case Errc::NegativeTimeInMonoid:
    case Errc::NotProbabilistic:
    case Errc::NotMeasurable:
    case Errc::NonClosedAlgebra:
    case Errc::HorizonTooShort:
    case Errc::ZeroField:
      return true;
    default:
      return false;
  }
}

}  // namespace emergent
