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

#include "schwarzball/family.h"

#include <cmath>
#include <string>
#include <utility>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

constexpr double kNormalizationTolerance = 1e-12;

}  // namespace

NormalizedJet::NormalizedJet(JetVector components)
    : components_(std::move(components)) {
  require_uniform(components_, "normalized jet");
  const int n = dimension();
  if (components_.front().vars() != n) {
    throw DimensionError("normalized jet must map C^n to C^n");
  }
  if (components_.front().degree() < 1) {
    throw DimensionError("normalized jet needs degree >= 1");
  }
  double worst = 0.0;
  for (int l = 0; l < n; ++l) {
    worst = std::max(worst, std::abs(components_[l].constant_term()));
    for (int k = 0; k < n; ++k) {
      const Complex expected = (k == l) ? 1.0 : 0.0;
      worst = std::max(worst,
                       std::abs(components_[l].linear_coeff(k) - expected));
    }
  }
  if (worst > kNormalizationTolerance) {
    throw ContractError("map is not normalized: |G(0)| or |DG(0) - Id| = " +
                        std::to_string(worst));
  }
}

NormalizedJet normalized_jet(const MapSpec& f, int degree) {
  return NormalizedJet(
      map_jet_at(f, CVector::Zero(f.dimension()), degree));
}

NormalizedJet koebe_transform(const MapSpec& f, const Point& zeta,
                              int degree) {
  const int n = f.dimension();
  if (zeta.size() != n) {
    throw DimensionError("koebe_transform: center has wrong dimension");
  }
  const BallAutomorphism sigma = automorphism_from_center(zeta);
  JetVector pulled =
      compose_maps(f, MapSpec{sigma}, CVector::Zero(n), degree);
  for (auto& j : pulled) j.set_constant_term(0.0);

  // The linear part of F o sigma at 0 is DF(zeta) Dsigma(0).
  CMatrix linear(n, n);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) linear(l, k) = pulled[l].linear_coeff(k);
  }
  const CMatrix m = linear.inverse();
  JetVector g;
  g.reserve(n);
  for (int i = 0; i < n; ++i) {
    Jet acc(n, degree);
    for (int l = 0; l < n; ++l) acc += pulled[l] * m(i, l);
    g.push_back(std::move(acc));
  }
  // Exact normalization: the linear part is Id up to roundoff in m * linear.
  double drift = 0.0;
  for (int i = 0; i < n; ++i) {
    auto c = g[i].mutable_coefficients();
    for (int k = 0; k < n; ++k) {
      const Complex want = (i == k) ? 1.0 : 0.0;
      const int idx = g[i].layout().linear_index(k);
      drift = std::max(drift, std::abs(c[idx] - want));
      c[idx] = want;
    }
  }
  if (drift > 1e-9) {
    throw SingularDifferentialError(
        "koebe_transform: DF(zeta) Dsigma(0) is too ill-conditioned to "
        "normalize");
  }
  return NormalizedJet(std::move(g));
}

MapSpec koebe_map(const MapSpec& f, const Point& zeta) {
  const int n = f.dimension();
  if (zeta.size() != n) {
    throw DimensionError("koebe_map: center has wrong dimension");
  }
  const BallAutomorphism sigma = automorphism_from_center(zeta);
  const MapSpec pulled{Composition{{MapSpec{sigma}, f}}};
  const JetVector jet = map_jet_at(pulled, CVector::Zero(n), 1);
  const CMatrix m = jet_jacobian(jet).constant_part().inverse();
  const CVector offset = constant_terms(jet);

  // w -> M (w - F(zeta)) as an affine polynomial map.
  PolyMap affine;
  affine.components.resize(n);
  const CVector shift = -(m * offset);
  for (int i = 0; i < n; ++i) {
    affine.components[i].push_back({std::vector<int>(n, 0), shift[i]});
    for (int l = 0; l < n; ++l) {
      std::vector<int> e(n, 0);
      e[l] = 1;
      affine.components[i].push_back({e, m(i, l)});
    }
  }
  return MapSpec{Composition{{MapSpec{sigma}, f, MapSpec{std::move(affine)}}}};
}

CVector grad_jacobian(const NormalizedJet& g) {
  const Jet jac = jet_det(jet_jacobian(g.components()));
  CVector grad(g.dimension());
  for (int i = 0; i < g.dimension(); ++i) grad[i] = jac.linear_coeff(i);
  return grad;
}

TraceOrder trace_order_functional(const NormalizedJet& g) {
  if (g.degree() < 2) {
    throw DimensionError("trace order needs a jet of degree >= 2");
  }
  const int n = g.dimension();
  TraceOrder t;
  t.coefficients = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      t.coefficients[i] += second_derivative(g.components()[j], i, j);
    }
  }
  // sup over the unit sphere of |<c, conj(w)>| is |c|.
  t.value = 0.5 * t.coefficients.norm();
  t.grad_jf = grad_jacobian(g);
  t.from_gradient = 0.5 * t.grad_jf.norm();
  if (std::abs(t.value - t.from_gradient) >
      1e-10 * std::max(1.0, t.value)) {
    throw ContractError("trace order: the two forms disagree");
  }
  return t;
}

SphereMaximum norm_order_functional(const NormalizedJet& g,
                                    const SphereSearchOptions& options) {
  if (g.degree() < 2) {
    throw DimensionError("norm order needs a jet of degree >= 2");
  }
  const int n = g.dimension();
  std::vector<CMatrix> forms(n, CMatrix::Zero(n, n));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        forms[l](i, j) = 0.5 * second_derivative(g.components()[l], i, j);
      }
    }
  }
  const CMatrix id = CMatrix::Identity(n, n);
  return maximize_quadratic_map(forms, id, id, options);
}

OrderFunctionals order_functionals(const NormalizedJet& g,
                                   const SphereSearchOptions& options) {
  const TraceOrder t = trace_order_functional(g);
  OrderFunctionals out;
  out.trace_order = t.value;
  out.grad_jf = t.grad_jf;
  out.norm_order = norm_order_functional(g, options).value;
  return out;
}

Membership membership_check(const MapSpec& f, double alpha,
                            const SupOptions& options) {
  if (!(alpha >= 0.0)) {
    throw DomainError("membership_check: alpha must be non-negative");
  }
  Membership m;
  m.estimate = schwarzian_norm_sup(f, options);
  m.margin = alpha - m.estimate.value;
  m.member = m.estimate.value <= alpha + kMembershipMargin;
  return m;
}

}  // namespace schwarzball
