// Copyright 2026 The schwarzball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCHWARZBALL_ERRORS_H_
#define SCHWARZBALL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace schwarzball {

/// Base class of every mathematical failure raised by the library.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched variable counts, truncation degrees or vector lengths.
class DimensionError : public MathError {
 public:
  using MathError::MathError;
};

/// log/pow requested at a constant term that is zero or on (-inf, 0].
class BranchError : public MathError {
 public:
  using MathError::MathError;
};

/// The complex differential is singular at the requested center.
class SingularDifferentialError : public MathError {
 public:
  using MathError::MathError;
};

/// Composition with an inner jet that has a nonzero constant term.
class CompositionCenterError : public MathError {
 public:
  using MathError::MathError;
};

/// A rational map's denominator vanishes at the requested point.
class VanishingDenominatorError : public MathError {
 public:
  using MathError::MathError;
};

/// A point outside the open unit ball, or an argument outside its domain.
class DomainError : public MathError {
 public:
  using MathError::MathError;
};

/// Inputs that violate a structural contract (e.g. a non-normalized map).
class ContractError : public MathError {
 public:
  using MathError::MathError;
};

/// An extremal search that cannot start from a feasible configuration.
class InfeasibleError : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace schwarzball

#endif  // SCHWARZBALL_ERRORS_H_
