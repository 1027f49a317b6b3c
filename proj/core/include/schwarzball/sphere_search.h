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

// Multistart projected gradient ascent for
//
//   max_{|u| = 1}  || Q(M u) ||_H,    Q(v)_k = v^t Q_k v,
//
// with symmetric Q_k, an input map M and a hermitian positive-definite
// output metric H (||w||_H^2 = w^* H w).  The complex unit sphere is treated
// as the real (2n-1)-sphere.

#ifndef SCHWARZBALL_SPHERE_SEARCH_H_
#define SCHWARZBALL_SPHERE_SEARCH_H_

#include <cstdint>
#include <span>

#include "schwarzball/types.h"

namespace schwarzball {

struct SphereSearchOptions {
  int starts = 16;
  int max_iterations = 500;
  /// Further iterations for the best start if it has not converged.
  int polish_iterations = 50000;
  double min_step = 1e-12;
  std::uint64_t seed = 0x5eed;
};

struct SphereMaximum {
  double value = 0.0;      // sqrt of the best objective, a lower bound
  CVector arg;             // maximizing v = M u
  int starts = 0;
  bool converged = false;  // best start stopped on the step criterion
  int iterations = 0;      // iterations of the best start
};

SphereMaximum maximize_quadratic_map(std::span<const CMatrix> forms,
                                     const CMatrix& output_metric,
                                     const CMatrix& input_map,
                                     const SphereSearchOptions& options);

/// ||Q(v)||_H for a given v (no normalization).
double quadratic_map_norm(std::span<const CMatrix> forms,
                          const CMatrix& output_metric, const CVector& v);

}  // namespace schwarzball

#endif  // SCHWARZBALL_SPHERE_SEARCH_H_
