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

// First variation of the trace order under Koebe transforms.
//
// For a normalized F with Lambda = grad(JF)(0) and
//
//   A_ij = B_ij - (n+1) B0_ij + lambda_i lambda_j / (n+1),
//   B_ij = sum_k S^k_ij(0) lambda_k,   B0_ij = S^0_ij(0),
//
// the logarithmic gradient of JF has derivative A at 0, and the Koebe
// transform G at a small center zeta satisfies
//
//   grad(JG)(0) = Lambda + A zeta - (n+1) conj(zeta) + O(|zeta|^2).
//
// A map maximizing |grad(JF)(0)| therefore has A conj(Lambda) = (n+1) Lambda.

#ifndef SCHWARZBALL_VARIATIONAL_H_
#define SCHWARZBALL_VARIATIONAL_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "schwarzball/bergman.h"
#include "schwarzball/family.h"
#include "schwarzball/maps.h"
#include "schwarzball/types.h"

namespace schwarzball {

struct VariationReport {
  CVector lambda;  // grad(JF)(0)
  CMatrix b;
  CMatrix b0;
  CMatrix a;
  /// |A conj(Lambda) - (n+1) Lambda|.
  double extremal_residual = 0.0;
  /// |A conj(Lambda) - (n+1) conj(Lambda)|.  Agrees with extremal_residual
  /// whenever Lambda is real, in particular after decoupled rotation.
  double conjugated_residual = 0.0;
  /// |A - A^t|_max.
  double symmetry_residual = 0.0;
};

/// Throws ContractError unless F is normalized.
VariationReport matrix_a(const MapSpec& f, int degree = kDefaultJetDegree);

/// max_ij |d_j d_i log JF(0) - A_ij|, with the left side read directly from
/// the jet of log JF.
double lemma31_check(const MapSpec& f, int degree = kDefaultJetDegree);

struct VariationScaling {
  CVector direction;
  std::vector<double> scales;
  std::vector<double> errors;      // |grad(JG_s)(0) - Lambda - s A u + (n+1) s conj(u)|
  std::vector<double> normalized;  // errors / s^2
  std::vector<double> ratios;      // consecutive normalized values, floored
  double max_ratio = 0.0;
  bool bounded = true;             // every ratio <= kVariationRatioBound
};

inline constexpr double kVariationRatioBound = 4.0;
/// error / s^2 values below this are treated as this value in the ratios.
inline constexpr double kVariationFloor = 1e-9;

/// Koebe transforms at zeta = s u for each s in `scales` (positive and
/// strictly decreasing).  `direction` is normalized to a unit vector.
VariationScaling variation_expansion_check(const MapSpec& f,
                                           const std::vector<double>& scales,
                                           const CVector& direction);

/// Same, with a unit direction drawn from `seed`.
VariationScaling variation_expansion_check(const MapSpec& f,
                                           const std::vector<double>& scales,
                                           std::uint64_t seed = 0x5eed);

struct DecoupledResiduals {
  /// V with grad(J Ft)(0) = (lambda, 0, ..., 0) for Ft(z) = V^* F(V z).
  CMatrix rotation;
  double lambda = 0.0;
  Complex s1_11;
  Complex s0_11;
  /// lambda^2 + (n+1) S^1_11 lambda - (n+1)^2 S^0_11 - (n+1)^2.
  Complex quadratic;
  /// S^1_1j lambda - (n+1) S^0_1j for j = 2..n.
  CVector off;
  double max_off = 0.0;
};

DecoupledResiduals decoupled_residuals(const MapSpec& f,
                                       int degree = kDefaultJetDegree);

struct BoundReport {
  int n = 2;
  double alpha = 0.0;
  double c_exact = 0.0;
  double c_simple = 0.0;
  double ord_bound = 0.0;
  double norm_ord_bound = 0.0;
  double lower_bound = 0.0;
};

/// Throws DimensionError for n < 2, DomainError for negative or non-finite
/// alpha, and ContractError should c_exact exceed c_simple.
BoundReport bounds_report(int n, double alpha);

/// A finite-dimensional real parameterization of normalized maps.
class Subfamily {
 public:
  virtual ~Subfamily() = default;
  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  virtual int parameter_count() const = 0;
  /// Clamps or projects `params` into the admissible set.
  virtual MapSpec map(std::span<const double> params) const = 0;
  /// Typical parameter scale, used for simplex steps and restarts.
  virtual double scale() const = 0;
};

/// z / (1 - sum_j c_j z_j), c_j = p_{2j} + i p_{2j+1}, with c projected to
/// the closed unit ball.
class MoebiusSubfamily final : public Subfamily {
 public:
  explicit MoebiusSubfamily(int n);
  std::string name() const override { return "moebius"; }
  int dimension() const override { return n_; }
  int parameter_count() const override { return 2 * n_; }
  MapSpec map(std::span<const double> params) const override;
  double scale() const override { return 1.0; }

 private:
  int n_;
};

/// z + quadratic + cubic terms with real coefficients clamped to
/// [-half_width, half_width], one parameter per (component, monomial).
class CubicBoxSubfamily final : public Subfamily {
 public:
  CubicBoxSubfamily(int n, double half_width);
  std::string name() const override { return "cubic"; }
  int dimension() const override { return n_; }
  int parameter_count() const override {
    return n_ * static_cast<int>(monomials_.size());
  }
  MapSpec map(std::span<const double> params) const override;
  double scale() const override { return half_width_; }

 private:
  int n_;
  double half_width_;
  std::vector<std::vector<int>> monomials_;
};

struct SearchConfig {
  double alpha = 0.0;
  /// Objective evaluations across all restarts.
  int budget = 300;
  int restarts = 3;
  std::uint64_t seed = 0x5eed;
  double penalty = 1e3;
  SupOptions sup{0.9, 4, 12, 1, 0x5eed, SphereSearchOptions{8, 200, 2000,
                                                            1e-12, 0x5eed}};
};

struct SearchResult {
  std::vector<double> params;
  MapSpec best;
  double achieved_order = 0.0;  // 1/2 |grad(JF)(0)|
  NormEstimate norm_estimate;
  double extremal_residual = 0.0;
  double ord_bound = 0.0;
  double margin = 0.0;          // ord_bound - achieved_order
  bool feasible = false;        // norm estimate <= alpha + kMembershipMargin
  int evaluations = 0;
  bool budget_exhausted = false;
};

/// Penalized maximization of |grad(JF)(0)| subject to the searched
/// ||SF|| <= alpha.  Restart 0 starts at the zero parameter vector (the
/// identity map); later restarts start at seeded random points.  Throws
/// InfeasibleError for an empty parameterization or an infeasible start.
SearchResult extremal_search(const Subfamily& family,
                             const SearchConfig& config);

}  // namespace schwarzball

#endif  // SCHWARZBALL_VARIATIONAL_H_
