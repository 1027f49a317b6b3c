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

// The linearly invariant family F_alpha of normalized locally biholomorphic
// maps of the ball with ||SF|| <= alpha: Koebe transforms, the per-map trace
// and norm order functionals, and a membership test against a searched
// Schwarzian norm.

#ifndef SCHWARZBALL_FAMILY_H_
#define SCHWARZBALL_FAMILY_H_

#include "schwarzball/bergman.h"
#include "schwarzball/jet.h"
#include "schwarzball/maps.h"
#include "schwarzball/schwarzian.h"
#include "schwarzball/sphere_search.h"

namespace schwarzball {

/// Jet about 0 of a map G with G(0) = 0 and DG(0) = Id (to 1e-12).
class NormalizedJet {
 public:
  /// Throws ContractError when the jet is not normalized.
  explicit NormalizedJet(JetVector components);

  const JetVector& components() const { return components_; }
  int dimension() const { return static_cast<int>(components_.size()); }
  int degree() const { return components_.front().degree(); }

 private:
  JetVector components_;
};

/// Jet of `f` about 0, validated as normalized.
NormalizedJet normalized_jet(const MapSpec& f,
                             int degree = kDefaultJetDegree);

/// G(z) = Dsigma(0)^-1 DF(zeta)^-1 [F(sigma(z)) - F(zeta)] with
/// sigma = automorphism_from_center(zeta).
NormalizedJet koebe_transform(const MapSpec& f, const Point& zeta,
                              int degree = kDefaultJetDegree);

/// The same transform as a map: z -> M [F(sigma(z)) - F(zeta)], with M the
/// inverse of D(F o sigma)(0).  Its jet at 0 agrees with koebe_transform.
MapSpec koebe_map(const MapSpec& f, const Point& zeta);

/// grad(JG)(0), read off the degree-one part of det DG.
CVector grad_jacobian(const NormalizedJet& g);

struct TraceOrder {
  double value = 0.0;   // 1/2 sup_{|w|=1} |sum_ij d^2 g_j/dz_i dz_j (0) w_i|
  double from_gradient = 0.0;  // 1/2 |grad(JG)(0)|
  CVector coefficients;        // sum_j d^2 g_j / dz_i dz_j (0)
  CVector grad_jf;
};

/// Both forms of the trace functional; throws ContractError if they differ
/// by more than 1e-10.
TraceOrder trace_order_functional(const NormalizedJet& g);

/// 1/2 sup_{|w|=1} |D^2 G(0)(w, w)| with Euclidean norms on both sides.
SphereMaximum norm_order_functional(const NormalizedJet& g,
                                    const SphereSearchOptions& options = {});

struct OrderFunctionals {
  double trace_order = 0.0;
  CVector grad_jf;
  double norm_order = 0.0;
};

OrderFunctionals order_functionals(const NormalizedJet& g,
                                   const SphereSearchOptions& options = {});

/// Slack granted to the searched norm when deciding membership.
inline constexpr double kMembershipMargin = 1e-6;

struct Membership {
  bool member = false;
  /// alpha - estimate.  The estimate is a lower bound of ||SF||, so a
  /// positive margin is optimistic evidence, never proof, of membership.
  double margin = 0.0;
  NormEstimate estimate;
};

/// member iff the searched ||SF|| <= alpha + kMembershipMargin.
Membership membership_check(const MapSpec& f, double alpha,
                            const SupOptions& options = {});

}  // namespace schwarzball

#endif  // SCHWARZBALL_FAMILY_H_
