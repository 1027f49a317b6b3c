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

// Seeded random maps and points for the verification suites.

#ifndef SCHWARZBALL_TOOLS_GENERATORS_H_
#define SCHWARZBALL_TOOLS_GENERATORS_H_

#include <random>

#include "schwarzball/maps.h"

namespace schwarzball::cli {

using Rng = std::mt19937_64;

Complex random_complex(Rng& rng);  // standard complex Gaussian
/// Uniform in the ball of radius `radius`.
Point random_ball_point(int n, double radius, Rng& rng);
CVector random_unit_vector(int n, Rng& rng);
CMatrix random_unitary(int n, Rng& rng);

/// Moebius grid Id + spread * G with G complex Gaussian.
MoebiusMap random_moebius(int n, double spread, Rng& rng);

/// z -> c + (Id + 0.3 G) z + quadratic + cubic, coefficients of size `scale`.
PolyMap random_cubic(int n, double scale, Rng& rng);

/// z + quadratic + cubic, coefficients of size `scale`.
PolyMap random_normalized_cubic(int n, double scale, Rng& rng);

/// sigma_zeta o U with |zeta| <= radius and U unitary.
BallAutomorphism random_automorphism(int n, double radius, Rng& rng);

}  // namespace schwarzball::cli

#endif  // SCHWARZBALL_TOOLS_GENERATORS_H_
