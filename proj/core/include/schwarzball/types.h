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

#ifndef SCHWARZBALL_TYPES_H_
#define SCHWARZBALL_TYPES_H_

#include <complex>

#include <Eigen/Dense>

namespace schwarzball {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Points of C^n, tangent vectors and constant matrices share the Eigen types;
// the aliases only document intent at call sites.
using Point = CVector;

/// Smallest dimension for which the several-variable Schwarzian is defined.
inline constexpr int kMinDimension = 2;

}  // namespace schwarzball

#endif  // SCHWARZBALL_TYPES_H_
