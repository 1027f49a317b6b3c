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
#include <vector>

#include "cli/generators.h"
#include "schwarzball/bergman.h"
#include "schwarzball/errors.h"
#include "schwarzball/family.h"
#include "schwarzball/maps.h"

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

MapSpec quadratic_perturbation(std::vector<int> e, Complex a) {
  PolyMap f;
  f.components = {{{{1, 0}, 1.0}}, {{{0, 1}, 1.0}}};
  f.components[0].push_back({std::move(e), a});
  return MapSpec{f};
}

MapSpec shear(Complex a) { return quadratic_perturbation({0, 2}, a); }
MapSpec b_shear(Complex b) { return quadratic_perturbation({2, 0}, b); }

double normalization_error(const NormalizedJet& g) {
  const int n = g.dimension();
  double worst = 0.0;
  for (int l = 0; l < n; ++l) {
    worst = std::max(worst, std::abs(g.components()[l].constant_term()));
    for (int i = 0; i < n; ++i) {
      const Complex want = (i == l) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g.components()[l].linear_coeff(i) - want));
    }
  }
  return worst;
}

TEST(NormalizedJet, RejectsUnnormalizedJets) {
  const JetVector shifted = map_jet_at(identity_map(2), point({0.1, 0.0}), 3);
  EXPECT_THROW(NormalizedJet{shifted}, ContractError);
  PolyMap scaled;
  scaled.components = {{{{1, 0}, 2.0}}, {{{0, 1}, 1.0}}};
  EXPECT_THROW(normalized_jet(MapSpec{scaled}), ContractError);
}

TEST(KoebeTransform, CenterZeroReturnsNormalizedMap) {
  Rng rng(91);
  const MapSpec f{cli::random_normalized_cubic(3, 0.3, rng)};
  const NormalizedJet g = koebe_transform(f, Point::Zero(3));
  const NormalizedJet direct = normalized_jet(f);
  for (int l = 0; l < 3; ++l) {
    EXPECT_LE(g.components()[l].max_abs_diff(direct.components()[l]), kTol);
  }
}

TEST(KoebeTransform, IdentityGradientIsExact) {
  Rng rng(92);
  for (int n = 2; n <= 4; ++n) {
    std::vector<Point> centers;
    for (const double r : {1e-1, 1e-2}) centers.push_back(r * cli::random_unit_vector(n, rng));
    centers.push_back(cli::random_ball_point(n, 0.9, rng));
    for (const Point& zeta : centers) {
      const CVector grad = grad_jacobian(koebe_transform(identity_map(n), zeta));
      EXPECT_LE((grad + (n + 1.0) * zeta.conjugate()).cwiseAbs().maxCoeff(), kTol);
    }
  }
}

TEST(KoebeTransform, NormalizedMoebiusStaysNormalized) {
  const NormalizedJet g = koebe_transform(unit_moebius(2), point({0.05, Complex(0.0, 0.03)}));
  EXPECT_LE(normalization_error(g), kTol);
}

TEST(KoebeTransform, OutputsAreNormalized) {
  Rng rng(93);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 3;
    const MapSpec f{cli::random_cubic(n, 0.2, rng)};
    const NormalizedJet g = koebe_transform(f, cli::random_ball_point(n, 0.6, rng));
    EXPECT_LE(normalization_error(g), kTol);
  }
}

TEST(KoebeTransform, SingularCenterThrows) {
  PolyMap fold;
  fold.components = {{{{2, 0}, 1.0}, {{0, 1}, 0.0}}, {{{0, 1}, 1.0}}};
  EXPECT_THROW(koebe_transform(MapSpec{fold}, Point::Zero(2)), SingularDifferentialError);
}

TEST(KoebeMap, JetAgreesWithKoebeTransform) {
  Rng rng(94);
  for (int k = 0; k < 10; ++k) {
    const int n = 2 + k % 2;
    const MapSpec f{cli::random_cubic(n, 0.2, rng)};
    const Point zeta = cli::random_ball_point(n, 0.6, rng);
    const NormalizedJet g = koebe_transform(f, zeta);
    const JetVector jm = map_jet_at(koebe_map(f, zeta), Point::Zero(n), g.degree());
    for (int l = 0; l < n; ++l) EXPECT_LE(jm[l].max_abs_diff(g.components()[l]), 1e-11);
  }
}

TEST(KoebeMap, TransformsOfMembersStayInFamily) {
  Rng rng(95);
  for (int k = 0; k < 4; ++k) {
    const int n = 2;
    const MapSpec f = (k == 0) ? unit_moebius(n)
                               : MapSpec{normalized_moebius(cli::random_ball_point(n, 1.0, rng))};
    ASSERT_TRUE(membership_check(f, 0.0).member);
    const MapSpec g = koebe_map(f, cli::random_ball_point(n, 0.5, rng));
    EXPECT_LE(schwarzian_norm_sup(g).value, 0.0 + kMembershipMargin);
  }
}

TEST(GradJacobian, Examples) {
  EXPECT_EQ(grad_jacobian(normalized_jet(identity_map(2))).cwiseAbs().maxCoeff(), 0.0);
  const CVector g = grad_jacobian(normalized_jet(unit_moebius(2)));
  EXPECT_LE((g - point({3.0, 0.0})).cwiseAbs().maxCoeff(), kTol);
  const Complex b(0.5, -0.2);
  const CVector gb = grad_jacobian(normalized_jet(b_shear(b)));
  EXPECT_LE((gb - point({2.0 * b, 0.0})).cwiseAbs().maxCoeff(), kTol);
}

TEST(GradJacobian, UnitMoebiusInHigherDimensions) {
  for (int n = 2; n <= 5; ++n) {
    const CVector g = grad_jacobian(normalized_jet(unit_moebius(n)));
    EXPECT_NEAR(std::abs(g[0] - (n + 1.0)), 0.0, kTol);
    EXPECT_NEAR(g.tail(n - 1).norm(), 0.0, kTol);
  }
}

TEST(TraceOrder, Examples) {
  EXPECT_EQ(trace_order_functional(normalized_jet(identity_map(2))).value, 0.0);
  EXPECT_NEAR(trace_order_functional(normalized_jet(unit_moebius(2))).value, 1.5, kTol);
  EXPECT_NEAR(trace_order_functional(normalized_jet(b_shear(0.5))).value, 0.5, kTol);
}

TEST(TraceOrder, TwiceTraceEqualsGradientLength) {
  Rng rng(96);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 3;
    const NormalizedJet g =
        koebe_transform(MapSpec{cli::random_cubic(n, 0.3, rng)}, cli::random_ball_point(n, 0.7, rng));
    const TraceOrder t = trace_order_functional(g);
    EXPECT_NEAR(2.0 * t.value, grad_jacobian(g).norm(), 1e-10);
    EXPECT_NEAR(t.value, t.from_gradient, 1e-10);
  }
}

TEST(NormOrder, Examples) {
  EXPECT_EQ(norm_order_functional(normalized_jet(identity_map(2))).value, 0.0);
  for (const Complex a : {Complex(0.5), Complex(-0.3, 0.4), Complex(2.0)}) {
    EXPECT_NEAR(norm_order_functional(normalized_jet(shear(a))).value, std::abs(a), 1e-10);
    EXPECT_NEAR(norm_order_functional(normalized_jet(b_shear(a))).value, std::abs(a), 1e-10);
  }
}

TEST(OrderFunctionals, CombinesBothForms) {
  const OrderFunctionals o = order_functionals(normalized_jet(unit_moebius(2)));
  EXPECT_NEAR(o.trace_order, 1.5, kTol);
  EXPECT_NEAR(o.norm_order, 1.0, 1e-10);
  EXPECT_LE((o.grad_jf - point({3.0, 0.0})).cwiseAbs().maxCoeff(), kTol);
}

TEST(Membership, Examples) {
  for (const double alpha : {0.0, 0.5, 3.0}) {
    EXPECT_TRUE(membership_check(identity_map(2), alpha).member);
  }
  const Membership m = membership_check(unit_moebius(2), 0.0);
  EXPECT_TRUE(m.member);
  EXPECT_GE(m.margin, -kMembershipMargin);
  const Membership s = membership_check(shear(2.0), 0.5);
  EXPECT_FALSE(s.member);
  EXPECT_GE(s.estimate.value, 4.0 / std::sqrt(3.0) - 1e-10);
  EXPECT_NEAR(s.margin, 0.5 - s.estimate.value, kTol);
}

TEST(Membership, NegativeAlphaThrows) {
  EXPECT_THROW(membership_check(identity_map(2), -0.1), DomainError);
}

}  // namespace
}  // namespace schwarzball
