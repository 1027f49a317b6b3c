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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cli/generators.h"
#include "schwarzball/errors.h"
#include "schwarzball/family.h"
#include "schwarzball/maps.h"
#include "schwarzball/nelder_mead.h"
#include "schwarzball/variational.h"
#include "support/poly_oracle.h"

namespace schwarzball {
namespace {

using cli::Rng;

constexpr double kTol = 1e-12;

Point point(std::initializer_list<Complex> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (const Complex c : v) p[i++] = c;
  return p;
}

MapSpec unit_moebius(int n) {
  CVector c = CVector::Zero(n);
  c[0] = 1.0;
  return MapSpec{normalized_moebius(c)};
}

PolyMap b_shear_poly(Complex b) {
  PolyMap f;
  f.components = {{{{1, 0}, 1.0}, {{2, 0}, b}}, {{{0, 1}, 1.0}}};
  return f;
}
MapSpec b_shear(Complex b) { return MapSpec{b_shear_poly(b)}; }

// Independent evaluation of the bound formulas.
struct Bounds {
  double c_exact, c_simple, ord, norm_ord, lower;
};
Bounds reference_bounds(int n, double a) {
  const double m = n + 1.0;
  const double c = (4.0 * n * n + 2.0 * n - 2.0 + m / (n - 1.0)) * a * a +
                   (4.0 + 8.0 / (n - 1.0)) * std::sqrt(m) * a;
  const double s = std::sqrt(1.0 + m * a * a / 4.0 + c);
  return {c, 6.0 * n * n * a * a + 16.0 * std::sqrt(static_cast<double>(n)) * a,
          m / 2.0 * (std::sqrt(m) * a / 2.0 + s), m * a + s,
          1.0 + std::sqrt(3.0) / 2.0 * a};
}

class EmptySubfamily final : public Subfamily {
 public:
  std::string name() const override { return "empty"; }
  int dimension() const override { return 2; }
  int parameter_count() const override { return 0; }
  MapSpec map(std::span<const double>) const override { return identity_map(2); }
  double scale() const override { return 1.0; }
};

// (z1 + p z2^2, z2) with p offset by `base`; the origin is the shear `base`.
class ShearSubfamily final : public Subfamily {
 public:
  explicit ShearSubfamily(double base) : base_(base) {}
  std::string name() const override { return "shear"; }
  int dimension() const override { return 2; }
  int parameter_count() const override { return 1; }
  MapSpec map(std::span<const double> p) const override {
    PolyMap f;
    f.components = {{{{1, 0}, 1.0}, {{0, 2}, base_ + p[0]}}, {{{0, 1}, 1.0}}};
    return MapSpec{f};
  }
  double scale() const override { return 0.1; }

 private:
  double base_;
};

TEST(MatrixA, Identity) {
  const VariationReport r = matrix_a(identity_map(2));
  EXPECT_EQ(r.lambda.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.a.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.extremal_residual, 0.0);
}

TEST(MatrixA, NormalizedMoebius) {
  const VariationReport r = matrix_a(unit_moebius(2));
  EXPECT_LE((r.lambda - point({3.0, 0.0})).cwiseAbs().maxCoeff(), kTol);
  EXPECT_LE(r.b.cwiseAbs().maxCoeff(), kTol);
  EXPECT_LE(r.b0.cwiseAbs().maxCoeff(), kTol);
  CMatrix want = CMatrix::Zero(2, 2);
  want(0, 0) = 3.0;
  EXPECT_LE((r.a - want).cwiseAbs().maxCoeff(), kTol);
  EXPECT_LE(r.extremal_residual, kTol);
  EXPECT_LE(r.conjugated_residual, kTol);
}

TEST(MatrixA, BShear) {
  const double b = 0.5;
  const VariationReport r = matrix_a(b_shear(b));
  EXPECT_LE((r.lambda - point({2.0 * b, 0.0})).cwiseAbs().maxCoeff(), kTol);
  EXPECT_NEAR(std::abs(r.b(0, 0) - 2.0 * b / 3.0 * 2.0 * b), 0.0, kTol);
  EXPECT_NEAR(std::abs(r.b0(0, 0) - 20.0 * b * b / 9.0), 0.0, kTol);
  EXPECT_NEAR(std::abs(r.a(0, 0) - (-4.0 * b * b)), 0.0, kTol);
  EXPECT_NEAR(std::abs(r.a(0, 0) - (-1.0)), 0.0, kTol);
  EXPECT_GT(r.extremal_residual, 1.0);
}

TEST(MatrixA, EqualsHessianOfLogJacobian) {
  Rng rng(101);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 2;
    const PolyMap f = cli::random_normalized_cubic(n, 0.2, rng);
    const VariationReport r = matrix_a(MapSpec{f});
    const oracle::PolyMapOracle o(f);
    const CVector zero = CVector::Zero(n);
    EXPECT_LE((r.lambda - o.grad_log_jacobian(zero)).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LE((r.a - o.hess_log_jacobian(zero)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((r.b0 - o.s0(zero)).cwiseAbs().maxCoeff(), 1e-11);
    EXPECT_LE(r.symmetry_residual, 1e-10);
  }
}

TEST(MatrixA, RequiresNormalizedMap) {
  PolyMap f = b_shear_poly(0.5);
  f.components[1].push_back({{0, 0}, 0.1});
  EXPECT_THROW(matrix_a(MapSpec{f}), ContractError);
}

TEST(MatrixA, ExtremalResidualOfNormalizedMoebiusMaps) {
  // For z / (1 - <z, conj(c)>): Lambda = (n+1) c and A = (n+1) c c^t, so
  // A conj(Lambda) - (n+1) Lambda = (n+1)^2 (|c|^2 - 1) c.
  Rng rng(102);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 3;
    const CVector c = cli::random_ball_point(n, 1.0, rng);
    const VariationReport r = matrix_a(MapSpec{normalized_moebius(c)});
    const double m = n + 1.0;
    EXPECT_NEAR(r.extremal_residual, m * m * c.norm() * (1.0 - c.squaredNorm()), 1e-11);
    const CVector u = c / c.norm();
    const VariationReport unit = matrix_a(MapSpec{normalized_moebius(u)});
    EXPECT_LE(unit.extremal_residual, 1e-9);
    EXPECT_NEAR(0.5 * unit.lambda.norm(), 0.5 * m, 1e-12);
    // The unconjugated right-hand side only agrees when Lambda is real.
    EXPECT_NEAR(unit.conjugated_residual,
                m * m * (u - u.conjugate()).norm(), 1e-11);
  }
}

TEST(LogJacobianDerivativeCheck, ExactCases) {
  EXPECT_LE(lemma31_check(identity_map(2)), kTol);
  EXPECT_LE(lemma31_check(unit_moebius(2)), 1e-10);
  EXPECT_LE(lemma31_check(b_shear(0.5)), 1e-10);
}

TEST(LogJacobianDerivativeCheck, RandomNormalizedCubics) {
  Rng rng(103);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 2;
    EXPECT_LE(lemma31_check(MapSpec{cli::random_normalized_cubic(n, 0.2, rng)}), 1e-9);
  }
}

TEST(VariationExpansion, IdentityIsExact) {
  const VariationScaling v =
      variation_expansion_check(identity_map(2), {1e-1, 5e-2, 2.5e-2}, 7);
  for (const double e : v.errors) EXPECT_LE(e, 1e-14);
  EXPECT_TRUE(v.bounded);
}

TEST(VariationExpansion, NormalizedMoebiusScalesQuadratically) {
  const VariationScaling v = variation_expansion_check(
      unit_moebius(2), {1e-1, 5e-2, 2.5e-2}, point({Complex(0.6, 0.2), Complex(0.0, -0.5)}));
  EXPECT_LE(v.max_ratio, kVariationRatioBound);
  EXPECT_TRUE(v.bounded);
  EXPECT_NEAR(v.direction.norm(), 1.0, kTol);
  ASSERT_EQ(v.errors.size(), 3u);
  EXPECT_GT(v.errors[0], v.errors[2]);
}

TEST(VariationExpansion, BShearAndRandomMaps) {
  const std::vector<double> scales{1e-1, 5e-2, 2.5e-2};
  EXPECT_TRUE(variation_expansion_check(b_shear(0.5), scales, 11).bounded);
  Rng rng(104);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 2;
    const VariationScaling v = variation_expansion_check(
        MapSpec{cli::random_normalized_cubic(n, 0.2, rng)}, scales,
        cli::random_unit_vector(n, rng));
    EXPECT_LE(v.max_ratio, kVariationRatioBound);
  }
}

TEST(VariationExpansion, RejectsBadScales) {
  EXPECT_THROW(variation_expansion_check(identity_map(2), {}, 1), DomainError);
  EXPECT_THROW(variation_expansion_check(identity_map(2), {0.05, 0.1}, 1), DomainError);
  EXPECT_THROW(variation_expansion_check(identity_map(2), {1.5, 0.1}, 1), DomainError);
  EXPECT_THROW(variation_expansion_check(identity_map(2), {0.1}, CVector::Zero(2)),
               DomainError);
}

TEST(DecoupledResiduals, NormalizedMoebiusSolvesBothEquations) {
  const DecoupledResiduals d = decoupled_residuals(unit_moebius(2));
  EXPECT_NEAR(d.lambda, 3.0, kTol);
  EXPECT_LE(std::abs(d.quadratic), 1e-10);
  EXPECT_LE(d.max_off, 1e-10);
}

TEST(DecoupledResiduals, IdentityIsNotExtremal) {
  const DecoupledResiduals d = decoupled_residuals(identity_map(2));
  EXPECT_EQ(d.lambda, 0.0);
  EXPECT_NEAR(std::abs(d.quadratic), 9.0, kTol);
  EXPECT_LE((d.rotation - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(DecoupledResiduals, BShearFromMatrixAValues) {
  // lambda = 1, S^1_11 = 1/3, S^0_11 = 5/9: 1 + 3 (1/3) - 9 (5/9) - 9 = -12.
  const DecoupledResiduals d = decoupled_residuals(b_shear(0.5));
  EXPECT_NEAR(d.lambda, 1.0, kTol);
  EXPECT_NEAR(std::abs(d.s1_11 - 1.0 / 3.0), 0.0, kTol);
  EXPECT_NEAR(std::abs(d.s0_11 - 5.0 / 9.0), 0.0, kTol);
  EXPECT_NEAR(std::abs(d.quadratic - (-12.0)), 0.0, 1e-11);
  const oracle::PolyMapOracle o(b_shear_poly(0.5));
  const CVector zero = CVector::Zero(2);
  const Complex off = o.sk(zero)[0](0, 1) * 1.0 - 3.0 * o.s0(zero)(0, 1);
  EXPECT_NEAR(std::abs(d.off[0] - off), 0.0, kTol);
}

TEST(DecoupledResiduals, RotatedUnitMoebiusMaps) {
  Rng rng(105);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 3;
    const DecoupledResiduals d =
        decoupled_residuals(MapSpec{normalized_moebius(cli::random_unit_vector(n, rng))});
    EXPECT_NEAR(d.lambda, n + 1.0, 1e-11);
    EXPECT_LE(std::abs(d.quadratic), 1e-9);
    EXPECT_LE(d.max_off, 1e-9);
    EXPECT_LE((d.rotation * d.rotation.adjoint() - CMatrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff(),
              kTol);
  }
}

TEST(BoundsReport, AlphaZero) {
  const BoundReport b = bounds_report(2, 0.0);
  EXPECT_EQ(b.c_exact, 0.0);
  EXPECT_EQ(b.c_simple, 0.0);
  EXPECT_NEAR(b.ord_bound, 1.5, 1e-15);
  EXPECT_NEAR(b.norm_ord_bound, 1.0, 1e-15);
  EXPECT_NEAR(b.lower_bound, 1.0, 1e-15);
}

TEST(BoundsReport, AlphaOne) {
  const BoundReport b = bounds_report(2, 1.0);
  EXPECT_NEAR(b.c_exact, 21.0 + 12.0 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(b.c_exact, 41.78461, 1e-5);
  EXPECT_NEAR(b.c_simple, 24.0 + 16.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(b.c_simple, 46.62742, 1e-5);
  EXPECT_NEAR(b.ord_bound, 11.19616, 1e-5);
  EXPECT_NEAR(b.norm_ord_bound, 9.59808, 1e-5);
}

TEST(BoundsReport, GridMatchesReferenceAndOrdering) {
  for (int n = 2; n <= 10; ++n) {
    double prev_ord = -1.0;
    double prev_norm = -1.0;
    for (int k = 0; k <= 40; ++k) {
      const double alpha = 0.1 * k;
      const BoundReport b = bounds_report(n, alpha);
      const Bounds r = reference_bounds(n, alpha);
      EXPECT_NEAR(b.c_exact, r.c_exact, 1e-10 * std::max(1.0, r.c_exact));
      EXPECT_NEAR(b.c_simple, r.c_simple, 1e-10 * std::max(1.0, r.c_simple));
      EXPECT_NEAR(b.ord_bound, r.ord, 1e-10 * r.ord);
      EXPECT_NEAR(b.norm_ord_bound, r.norm_ord, 1e-10 * r.norm_ord);
      EXPECT_NEAR(b.lower_bound, r.lower, 1e-12 * r.lower);
      EXPECT_LE(b.c_exact, b.c_simple);
      EXPECT_LE(b.lower_bound, b.norm_ord_bound);
      EXPECT_GE(b.ord_bound, prev_ord);
      EXPECT_GE(b.norm_ord_bound, prev_norm);
      prev_ord = b.ord_bound;
      prev_norm = b.norm_ord_bound;
    }
  }
}

TEST(BoundsReport, RejectsInvalidInputs) {
  EXPECT_THROW(bounds_report(1, 0.5), DimensionError);
  EXPECT_THROW(bounds_report(2, -0.5), DomainError);
  EXPECT_THROW(bounds_report(2, std::numeric_limits<double>::quiet_NaN()), DomainError);
  EXPECT_THROW(bounds_report(2, std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Subfamilies, MoebiusProjectsToClosedBall) {
  const MoebiusSubfamily s(2);
  EXPECT_EQ(s.parameter_count(), 4);
  const std::vector<double> p{3.0, 0.0, 0.0, 4.0};
  const VariationReport r = matrix_a(s.map(p));
  EXPECT_NEAR(r.lambda.norm(), 3.0, kTol);
  EXPECT_THROW(s.map(std::vector<double>{1.0}), DimensionError);
  EXPECT_THROW(MoebiusSubfamily(1), DimensionError);
}

TEST(Subfamilies, CubicBoxClampsCoefficients) {
  const CubicBoxSubfamily s(2, 0.2);
  // Three quadratic and four cubic monomials per component.
  EXPECT_EQ(s.parameter_count(), 14);
  std::vector<double> p(14, 0.0);
  p[0] = 5.0;
  const MapSpec m = s.map(p);
  const auto& f = std::get<PolyMap>(m.kind);
  double biggest = 0.0;
  for (const auto& t : f.components[0]) {
    if (t.exponents != std::vector<int>{1, 0}) biggest = std::max(biggest, std::abs(t.coeff));
  }
  EXPECT_EQ(biggest, 0.2);
  EXPECT_THROW(CubicBoxSubfamily(2, 0.0), DomainError);
}

TEST(NelderMead, MinimizesRosenbrock) {
  int calls = 0;
  auto rosen = [&](std::span<const double> x) {
    ++calls;
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions o;
  o.max_evaluations = 2000;
  const NelderMeadResult r = nelder_mead(rosen, {-1.2, 1.0}, o);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], 1.0, 1e-4);
  EXPECT_EQ(calls, r.evaluations);
}

TEST(NelderMead, BudgetIsAHardCap) {
  for (const int budget : {4, 7, 10, 25}) {
    int calls = 0;
    auto sphere = [&](std::span<const double> x) {
      ++calls;
      double s = 0.0;
      for (const double v : x) s += (v - 0.3) * (v - 0.3);
      return s;
    };
    NelderMeadOptions o;
    o.max_evaluations = budget;
    const NelderMeadResult r = nelder_mead(sphere, {0.0, 0.0, 0.0}, o);
    EXPECT_LE(calls, budget);
    EXPECT_EQ(calls, r.evaluations);
    EXPECT_FALSE(r.converged);
  }
}

TEST(NelderMead, NonFiniteValuesAreAvoided) {
  auto f = [](std::span<const double> x) {
    return x[0] < 0.0 ? std::numeric_limits<double>::quiet_NaN()
                      : (x[0] - 1.0) * (x[0] - 1.0);
  };
  const NelderMeadResult r = nelder_mead(f, {0.5});
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(ExtremalSearch, MoebiusSubfamilyReachesTheBound) {
  SearchConfig cfg;
  cfg.alpha = 0.0;
  const SearchResult r = extremal_search(MoebiusSubfamily(2), cfg);
  EXPECT_GE(r.achieved_order, 1.5 - 1e-6);
  EXPECT_LE(r.achieved_order, r.ord_bound + 1e-12);
  EXPECT_NEAR(r.ord_bound, 1.5, 1e-15);
  EXPECT_LE(r.extremal_residual, 1e-6);
  EXPECT_TRUE(r.feasible);
  EXPECT_LE(r.evaluations, cfg.budget);
}

TEST(ExtremalSearch, DeterministicForFixedSeed) {
  SearchConfig cfg;
  cfg.budget = 80;
  const SearchResult a = extremal_search(MoebiusSubfamily(2), cfg);
  const SearchResult b = extremal_search(MoebiusSubfamily(2), cfg);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.achieved_order, b.achieved_order);
}

TEST(ExtremalSearch, CubicBoxRespectsBound) {
  SearchConfig cfg;
  cfg.alpha = 0.5;
  cfg.budget = 60;
  cfg.restarts = 2;
  const SearchResult r = extremal_search(CubicBoxSubfamily(2, 0.2), cfg);
  EXPECT_LE(r.achieved_order, bounds_report(2, 0.5).ord_bound);
  EXPECT_GE(r.margin, 0.0);
  EXPECT_GE(r.achieved_order, 0.0);
}

TEST(ExtremalSearch, EmptyParameterizationIsInfeasible) {
  EXPECT_THROW(extremal_search(EmptySubfamily(), SearchConfig{}), InfeasibleError);
}

TEST(ExtremalSearch, InfeasibleStartIsRejected) {
  SearchConfig cfg;
  cfg.alpha = 0.5;
  EXPECT_THROW(extremal_search(ShearSubfamily(2.0), cfg), InfeasibleError);
  EXPECT_NO_THROW(extremal_search(ShearSubfamily(0.0), [] {
    SearchConfig c;
    c.alpha = 0.5;
    c.budget = 10;
    c.restarts = 1;
    return c;
  }()));
}

}  // namespace
}  // namespace schwarzball
