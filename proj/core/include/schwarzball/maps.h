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

// Exact holomorphic maps C^n -> C^n: polynomial maps, Moebius
// transformations, automorphisms of the unit ball and composition chains,
// each expandable into an exact jet about any admissible center.

#ifndef SCHWARZBALL_MAPS_H_
#define SCHWARZBALL_MAPS_H_

#include <cstdint>
#include <variant>
#include <vector>

#include "schwarzball/jet.h"
#include "schwarzball/types.h"

namespace schwarzball {

struct PolyTerm {
  std::vector<int> exponents;
  Complex coeff;
};

using Polynomial = std::vector<PolyTerm>;

/// F = (f_1, ..., f_n) with polynomial components.
struct PolyMap {
  std::vector<Polynomial> components;

  int dimension() const { return static_cast<int>(components.size()); }
};

/// M(z) = (l_1/l_0, ..., l_n/l_0) with l_i(z) = a_{i0} + sum_j a_{ij} z_j.
/// The constructor rejects a singular coefficient grid.
class MoebiusMap {
 public:
  explicit MoebiusMap(CMatrix coeffs);

  int dimension() const { return static_cast<int>(coeffs_.rows()) - 1; }
  const CMatrix& coeffs() const { return coeffs_; }

 private:
  CMatrix coeffs_;
};

/// sigma(z) = (Az + B) / (Cz + D); C is stored as a length-n vector.
struct BallAutomorphism {
  CMatrix a;
  CVector b;
  CVector c;
  Complex d;

  int dimension() const { return static_cast<int>(a.rows()); }
  /// The equivalent (n+1)x(n+1) Moebius grid [[D, C], [B, A]].
  CMatrix moebius_grid() const;
};

struct MapSpec;

/// stages[0] is applied first.
struct Composition {
  std::vector<MapSpec> stages;
};

struct MapSpec {
  std::variant<PolyMap, MoebiusMap, BallAutomorphism, Composition> kind;

  int dimension() const;
};

/// Residuals of the three block identities, plus an interior sample check.
struct AutomorphismResidual {
  double unitary_block = 0.0;     // |A^t conj(A) - C^t conj(C) - Id|_max
  double scalar_block = 0.0;      // ||D|^2 - B^t conj(B) - 1|
  double cross_block = 0.0;       // |A^t conj(B) - C^t conj(D)|_max
  double max_sample_norm = 0.0;   // max |sigma(z)| over the samples
  int samples = 0;
  bool maps_into_ball = true;

  double max_residual() const;
};

/// Exact Taylor jet of `m` about `center` to `degree`.  Throws
/// VanishingDenominatorError or SingularDifferentialError (|det DF| <= 1e-12
/// at the center).
JetVector map_jet_at(const MapSpec& m, const Point& center, int degree);

Point map_eval(const MapSpec& m, const Point& z);

/// Jet of outer o inner about `center`.
JetVector compose_maps(const MapSpec& outer, const MapSpec& inner,
                       const Point& center, int degree);

/// Ball automorphism with sigma(0) = zeta.  Axis-aligned centers use the
/// explicit one-variable-twisted form; other centers conjugate it by a
/// unitary rotation sending |zeta| e_1 to zeta.  Throws DomainError for
/// |zeta| >= 1.
BallAutomorphism automorphism_from_center(const Point& zeta);

/// sigma(z) = U z.
BallAutomorphism unitary_automorphism(const CMatrix& u);

AutomorphismResidual automorphism_validate(const BallAutomorphism& sigma,
                                           int samples = 200,
                                           std::uint64_t seed = 0x5eed);

/// Unitary W with W x = |x| e_1 (Householder reflection followed by a phase).
/// Identity when x = 0.
CMatrix unitary_to_axis(const CVector& x);

MapSpec identity_map(int n);
/// z -> U z as a Moebius transformation.
MoebiusMap linear_moebius(const CMatrix& u);
/// The normalized Moebius map z / (1 - <z, conj(c)>) = z / (1 - sum c_j z_j).
MoebiusMap normalized_moebius(const CVector& c);

}  // namespace schwarzball

#endif  // SCHWARZBALL_MAPS_H_
