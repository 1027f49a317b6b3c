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

// Oda's Schwarzian tensors of a locally biholomorphic map F of C^n:
//
//   S^k_ij F = sum_l (d^2 f_l / dz_i dz_j) (dz_k / df_l)
//              - (delta^k_i d_j + delta^k_j d_i) log JF / (n + 1),
//
// and the S^0_ij coefficients that make u0 = JF^(-1/(n+1)) a solution of
//
//   d^2 u / dz_i dz_j = sum_k S^k_ij du/dz_k + S^0_ij u.

#ifndef SCHWARZBALL_SCHWARZIAN_H_
#define SCHWARZBALL_SCHWARZIAN_H_

#include <vector>

#include "schwarzball/jet.h"
#include "schwarzball/maps.h"
#include "schwarzball/types.h"

namespace schwarzball {

/// Jet degree used when a caller does not choose one: S^0 needs third
/// derivatives of F, and one spare degree keeps compositions exact.
inline constexpr int kDefaultJetDegree = 4;

struct SchwarzianTensor {
  Point base;                 // z
  Point image;                // F(z)
  std::vector<CMatrix> sk;    // sk[k](i, j) = S^k_ij F(z), k = 0..n-1
  CMatrix s0;                 // S^0_ij F(z)

  int dimension() const { return static_cast<int>(base.size()); }
  /// Largest |entry| over all S^k and S^0.
  double max_abs_entry() const;
};

/// Tensors from the jet of F about `base` (degree >= 3).  Throws
/// SingularDifferentialError when DF(base) is singular.
SchwarzianTensor schwarzian_at(const JetVector& jf, const Point& base);

/// Convenience: expands `f` about z and calls schwarzian_at.
SchwarzianTensor schwarzian_of(const MapSpec& f, const Point& z,
                               int degree = kDefaultJetDegree);

/// (v^t S^1 v, ..., v^t S^n v).
CVector schwarzian_apply(const SchwarzianTensor& t, const CVector& v);

/// Tensor of G o F at z from those of F at z and G at w = F(z):
///
///   S^k_ij(G o F) = S^k_ij F + sum_{l,m,r} S^r_lm G(w) DF_li DF_mj DF^-1_kr.
///
/// The composition law covers k >= 1 only, so S^0 is recomputed from
/// `composed`, the jet of G o F about z.  Throws ContractError when
/// tg.base differs from tf.image.
SchwarzianTensor chain_rule_transform(const SchwarzianTensor& tf,
                                      const SchwarzianTensor& tg,
                                      const CMatrix& df,
                                      const JetVector& composed);

/// max_i |sum_j S^j_ij|; zero for tensors of actual maps.
double canonical_residual(const SchwarzianTensor& t);

/// max_ij |d_ij u0 - sum_k S^k_ij d_k u0 - S^0_ij u0| at the jet center, with
/// u0 built as exp(-log(JF) / (n + 1)) independently of schwarzian_at.
double pde_residual(const JetVector& jf);

/// Entrywise max |a - b| over S^k and S^0.
double max_abs_diff(const SchwarzianTensor& a, const SchwarzianTensor& b);
/// Same, ignoring S^0.
double max_abs_diff_sk(const SchwarzianTensor& a, const SchwarzianTensor& b);

}  // namespace schwarzball

#endif  // SCHWARZBALL_SCHWARZIAN_H_
