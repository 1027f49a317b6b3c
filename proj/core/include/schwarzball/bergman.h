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

// Bergman metric of the unit ball and the invariant Schwarzian norm.
//
//   g_ij(z) = (n+1) / (1-|z|^2)^2 [ (1-|z|^2) delta_ij + conj(z_i) z_j ],
//   ||v||_{B,z}^2 = sum_ij g_ij(z) v_i conj(v_j).
//
// ||SF(z)|| is the supremum of ||SF(z)(v)||_{B,z} over ||v||_{B,z} = 1: the
// direction and the output vector are both measured at z.  With that
// convention ||S(F o sigma)(z)|| = ||SF(sigma(z))|| for automorphisms sigma.

#ifndef SCHWARZBALL_BERGMAN_H_
#define SCHWARZBALL_BERGMAN_H_

#include <cstdint>

#include "schwarzball/maps.h"
#include "schwarzball/schwarzian.h"
#include "schwarzball/sphere_search.h"
#include "schwarzball/types.h"

namespace schwarzball {

struct MetricTensor {
  Point base;
  CMatrix g;
};

/// Throws DomainError unless |z| < 1.
MetricTensor metric_at(const Point& z);

double bergman_norm(const Point& z, const CVector& v);

/// A searched supremum.  `value` is attained at (arg_z, arg_v), so it is a
/// certified lower bound of the true supremum; it is not an upper bound.
struct NormEstimate {
  double value = 0.0;
  CVector arg_v;
  Point arg_z;
  int starts = 0;
  bool converged = false;
  double r_max = 0.0;
  int evaluations = 0;
};

/// ||SF(z)|| for a tensor based at z.
NormEstimate tensor_norm(const SchwarzianTensor& t,
                         const SphereSearchOptions& options = {});

NormEstimate schwarzian_norm_at(const MapSpec& f, const Point& z,
                                const SphereSearchOptions& options = {});

struct SupOptions {
  double r_max = 0.9;
  /// Radial spacing is 0.9 / (shells - 1); shells continue while r <= r_max.
  int shells = 7;
  int samples_per_shell = 50;
  int refinement_rounds = 3;
  std::uint64_t seed = 0x5eed;
  SphereSearchOptions sphere;
};

/// sup_{|z| <= r_max} ||SF(z)||, estimated on radial shells with a local
/// refinement of each shell's best sample confined to that shell's radius.
/// Shells do not depend on r_max, so the result is non-decreasing in r_max.
/// Throws DomainError unless 0 <= r_max < 1.
NormEstimate schwarzian_norm_sup(const MapSpec& f,
                                 const SupOptions& options = {});

/// | ||S(F o sigma)(z)|| - ||SF(sigma(z))|| |.
double invariance_residual(const MapSpec& f, const BallAutomorphism& sigma,
                           const Point& z,
                           const SphereSearchOptions& options = {});

}  // namespace schwarzball

#endif  // SCHWARZBALL_BERGMAN_H_
