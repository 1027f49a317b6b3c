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

#ifndef SCHWARZBALL_NELDER_MEAD_H_
#define SCHWARZBALL_NELDER_MEAD_H_

#include <functional>
#include <span>
#include <vector>

namespace schwarzball {

struct NelderMeadOptions {
  /// Hard cap on calls to f, except that the initial simplex is always
  /// evaluated in full.
  int max_evaluations = 400;
  double initial_step = 0.1;
  /// Stop when the simplex values spread less than this.
  double value_tolerance = 1e-12;
  /// ... and the simplex diameter is below this.
  double size_tolerance = 1e-10;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes `f` with the standard reflection/expansion/contraction/shrink
/// coefficients (1, 2, 1/2, 1/2).  Non-finite values are treated as +inf.
NelderMeadResult nelder_mead(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace schwarzball

#endif  // SCHWARZBALL_NELDER_MEAD_H_
