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

#include "schwarzball/maps.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

constexpr double kSingularTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_point(const Point& z, int n, const char* context) {
  if (z.size() != n) {
    throw DimensionError(std::string(context) + ": point has dimension " +
                         std::to_string(z.size()) + ", map has " +
                         std::to_string(n));
  }
}

double moebius_denominator_scale(const CMatrix& grid, const Point& z) {
  double s = std::abs(grid(0, 0));
  for (int j = 0; j < z.size(); ++j) s += std::abs(grid(0, j + 1) * z[j]);
  return std::max(s, 1.0);
}

JetVector poly_jet(const PolyMap& f, const Point& center, int degree) {
  const int n = f.dimension();
  int top = 0;
  for (const auto& comp : f.components) {
    for (const auto& t : comp) {
      if (static_cast<int>(t.exponents.size()) != n) {
        throw DimensionError("polynomial term has " +
                             std::to_string(t.exponents.size()) +
                             " exponents in dimension " + std::to_string(n));
      }
      for (int e : t.exponents) {
        if (e < 0) throw DimensionError("negative polynomial exponent");
        top = std::max(top, e);
      }
    }
  }
  // powers[v][e] = (center_v + z_v)^e, exact up to `degree`.
  std::vector<std::vector<Jet>> powers(n);
  for (int v = 0; v < n; ++v) {
    const Jet base = Jet::variable(n, degree, v, center[v]);
    powers[v].push_back(Jet::constant(n, degree, 1.0));
    for (int e = 1; e <= top; ++e) powers[v].push_back(powers[v].back() * base);
  }
  JetVector out;
  out.reserve(n);
  for (const auto& comp : f.components) {
    Jet acc(n, degree);
    for (const auto& t : comp) {
      Jet term = Jet::constant(n, degree, t.coeff);
      for (int v = 0; v < n; ++v) {
        if (t.exponents[v] > 0) term = term * powers[v][t.exponents[v]];
      }
      acc += term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

JetVector rational_jet(const CMatrix& grid, const Point& center, int degree) {
  const int n = static_cast<int>(grid.rows()) - 1;
  std::vector<Jet> forms;
  forms.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    Jet l = Jet::constant(n, degree, grid(i, 0));
    Complex value = grid(i, 0);
    for (int j = 0; j < n; ++j) value += grid(i, j + 1) * center[j];
    l.set_constant_term(value);
    if (degree >= 1) {
      auto c = l.mutable_coefficients();
      for (int j = 0; j < n; ++j) {
        c[l.layout().linear_index(j)] = grid(i, j + 1);
      }
    }
    forms.push_back(std::move(l));
  }
  const Complex den = forms[0].constant_term();
  if (std::abs(den) <=
      1e-14 * moebius_denominator_scale(grid, center)) {
    throw VanishingDenominatorError(
        "rational map: denominator vanishes at the expansion center");
  }
  const Jet inv = jet_reciprocal(forms[0]);
  JetVector out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back(forms[i] * inv);
  return out;
}

Point rational_eval(const CMatrix& grid, const Point& z) {
  const int n = static_cast<int>(grid.rows()) - 1;
  CVector hom(n + 1);
  hom[0] = 1.0;
  hom.tail(n) = z;
  const CVector l = grid * hom;
  if (std::abs(l[0]) <= 1e-14 * moebius_denominator_scale(grid, z)) {
    throw VanishingDenominatorError("rational map: denominator vanishes");
  }
  return l.tail(n) / l[0];
}

JetVector raw_jet(const MapSpec& m, const Point& center, int degree);

JetVector composition_jet(const Composition& comp, const Point& center,
                          int degree) {
  if (comp.stages.empty()) {
    throw DimensionError("composition chain is empty");
  }
  JetVector acc = raw_jet(comp.stages.front(), center, degree);
  for (std::size_t s = 1; s < comp.stages.size(); ++s) {
    const MapSpec& outer = comp.stages[s];
    if (outer.dimension() != static_cast<int>(acc.size())) {
      throw DimensionError("composition stages have mismatched dimensions");
    }
    const Point w = constant_terms(acc);
    const JetVector outer_jet = raw_jet(outer, w, degree);
    JetVector shifted = acc;
    for (auto& j : shifted) j.set_constant_term(0.0);
    JetVector next;
    next.reserve(outer_jet.size());
    for (const auto& oj : outer_jet) next.push_back(jet_compose(oj, shifted));
    acc = std::move(next);
  }
  return acc;
}

JetVector raw_jet(const MapSpec& m, const Point& center, int degree) {
  require_point(center, m.dimension(), "map_jet_at");
  return std::visit(
      Overloaded{
          [&](const PolyMap& f) { return poly_jet(f, center, degree); },
          [&](const MoebiusMap& f) {
            return rational_jet(f.coeffs(), center, degree);
          },
          [&](const BallAutomorphism& f) {
            return rational_jet(f.moebius_grid(), center, degree);
          },
          [&](const Composition& f) {
            return composition_jet(f, center, degree);
          },
      },
      m.kind);
}

Point random_ball_point(int n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CVector z(n);
  for (int i = 0; i < n; ++i) z[i] = Complex(gauss(rng), gauss(rng));
  const double r = radius * std::pow(unit(rng), 1.0 / (2.0 * n));
  return z * (r / z.norm());
}

}  // namespace

MoebiusMap::MoebiusMap(CMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != coeffs_.cols() || coeffs_.rows() < 2) {
    throw DimensionError("Moebius coefficient grid must be (n+1)x(n+1)");
  }
  const double scale = std::max(coeffs_.cwiseAbs().maxCoeff(), 1e-300);
  const double det = std::abs(coeffs_.determinant());
  if (det <= 1e-12 * std::pow(scale, static_cast<double>(coeffs_.rows()))) {
    throw SingularDifferentialError("Moebius coefficient grid is singular");
  }
}

CMatrix BallAutomorphism::moebius_grid() const {
  const int n = dimension();
  CMatrix g(n + 1, n + 1);
  g(0, 0) = d;
  g.block(0, 1, 1, n) = c.transpose();
  g.block(1, 0, n, 1) = b;
  g.block(1, 1, n, n) = a;
  return g;
}

int MapSpec::dimension() const {
  return std::visit(
      Overloaded{
          [](const PolyMap& f) { return f.dimension(); },
          [](const MoebiusMap& f) { return f.dimension(); },
          [](const BallAutomorphism& f) { return f.dimension(); },
          [](const Composition& f) {
            if (f.stages.empty()) {
              throw DimensionError("composition chain is empty");
            }
            return f.stages.front().dimension();
          },
      },
      kind);
}

double AutomorphismResidual::max_residual() const {
  return std::max({unitary_block, scalar_block, cross_block});
}

JetVector map_jet_at(const MapSpec& m, const Point& center, int degree) {
  JetVector jet = raw_jet(m, center, degree);
  if (degree >= 1) {
    const CMatrix df = jet_jacobian(jet).constant_part();
    if (std::abs(df.determinant()) <= kSingularTolerance) {
      throw SingularDifferentialError(
          "map is not locally biholomorphic at the requested center "
          "(det DF vanishes)");
    }
  }
  return jet;
}

Point map_eval(const MapSpec& m, const Point& z) {
  require_point(z, m.dimension(), "map_eval");
  return std::visit(
      Overloaded{
          [&](const PolyMap& f) {
            int top = 0;
            for (const auto& comp : f.components) {
              for (const auto& t : comp) {
                int tot = 0;
                for (int e : t.exponents) tot += e;
                top = std::max(top, tot);
              }
            }
            // Degree-`top` jet about z is exact; its constant terms are F(z).
            return Point(constant_terms(
                poly_jet(f, z, std::min(top, kMaxJetDegree))));
          },
          [&](const MoebiusMap& f) { return rational_eval(f.coeffs(), z); },
          [&](const BallAutomorphism& f) {
            return rational_eval(f.moebius_grid(), z);
          },
          [&](const Composition& f) {
            if (f.stages.empty()) {
              throw DimensionError("composition chain is empty");
            }
            Point w = z;
            for (const auto& s : f.stages) w = map_eval(s, w);
            return w;
          },
      },
      m.kind);
}

JetVector compose_maps(const MapSpec& outer, const MapSpec& inner,
                       const Point& center, int degree) {
  MapSpec chain{Composition{{inner, outer}}};
  return map_jet_at(chain, center, degree);
}

CMatrix unitary_to_axis(const CVector& x) {
  const int n = static_cast<int>(x.size());
  const double r = x.norm();
  CMatrix id = CMatrix::Identity(n, n);
  if (r == 0.0) return id;
  const Complex x0 = x[0];
  const Complex phase =
      std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
  // H x = -phase r e_1 with v = x + phase r e_1; W = -conj(phase) H.
  CVector v = x;
  v[0] += phase * r;
  const double vv = v.squaredNorm();
  const CMatrix h = id - (2.0 / vv) * v * v.adjoint();
  return -std::conj(phase) * h;
}

BallAutomorphism automorphism_from_center(const Point& zeta) {
  const int n = static_cast<int>(zeta.size());
  if (n < 1) throw DimensionError("automorphism center is empty");
  const double r = zeta.norm();
  if (!(r < 1.0)) {
    throw DomainError("automorphism center must satisfy |zeta| < 1, got " +
                      std::to_string(r));
  }
  const bool aligned = zeta.tail(n - 1).isZero(0.0);
  const Complex z1 = aligned ? zeta[0] : Complex(r);
  const double s = std::sqrt(1.0 - std::norm(z1));

  // sigma_axis(z) = (z_1 + z1, s z_2, ..., s z_n) / (1 + conj(z1) z_1),
  // scaled by 1/s so that the block identities hold with equality.
  BallAutomorphism axis;
  axis.a = CMatrix::Identity(n, n);
  axis.a(0, 0) = 1.0 / s;
  axis.b = CVector::Zero(n);
  axis.b[0] = z1 / s;
  axis.c = CVector::Zero(n);
  axis.c[0] = std::conj(z1) / s;
  axis.d = 1.0 / s;
  if (aligned) return axis;

  // U sends |zeta| e_1 to zeta; sigma = U sigma_axis U^*.
  const CMatrix u = unitary_to_axis(zeta).adjoint();
  BallAutomorphism out;
  out.a = u * axis.a * u.adjoint();
  out.b = u * axis.b;
  out.c = (axis.c.transpose() * u.adjoint()).transpose();
  out.d = axis.d;
  return out;
}

BallAutomorphism unitary_automorphism(const CMatrix& u) {
  const int n = static_cast<int>(u.rows());
  BallAutomorphism s;
  s.a = u;
  s.b = CVector::Zero(n);
  s.c = CVector::Zero(n);
  s.d = 1.0;
  return s;
}

AutomorphismResidual automorphism_validate(const BallAutomorphism& sigma,
                                           int samples, std::uint64_t seed) {
  const int n = sigma.dimension();
  if (sigma.b.size() != n || sigma.c.size() != n || sigma.a.cols() != n) {
    throw DimensionError("automorphism blocks have inconsistent sizes");
  }
  AutomorphismResidual res;
  const CMatrix& a = sigma.a;
  const CMatrix block1 = a.transpose() * a.conjugate() -
                         sigma.c * sigma.c.conjugate().transpose() -
                         CMatrix::Identity(n, n);
  res.unitary_block = block1.cwiseAbs().maxCoeff();
  res.scalar_block =
      std::abs(std::norm(sigma.d) - sigma.b.squaredNorm() - 1.0);
  const CVector block3 =
      a.transpose() * sigma.b.conjugate() - sigma.c * std::conj(sigma.d);
  res.cross_block = block3.cwiseAbs().maxCoeff();

  std::mt19937_64 rng(seed);
  const MapSpec m{sigma};
  res.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const Point z = random_ball_point(n, 0.999, rng);
    double norm = 0.0;
    try {
      norm = map_eval(m, z).norm();
    } catch (const VanishingDenominatorError&) {
      norm = std::numeric_limits<double>::infinity();
    }
    res.max_sample_norm = std::max(res.max_sample_norm, norm);
    if (!(norm < 1.0)) res.maps_into_ball = false;
  }
  return res;
}

MapSpec identity_map(int n) {
  return MapSpec{linear_moebius(CMatrix::Identity(n, n))};
}

MoebiusMap linear_moebius(const CMatrix& u) {
  const int n = static_cast<int>(u.rows());
  CMatrix g = CMatrix::Zero(n + 1, n + 1);
  g(0, 0) = 1.0;
  g.block(1, 1, n, n) = u;
  return MoebiusMap(g);
}

MoebiusMap normalized_moebius(const CVector& c) {
  const int n = static_cast<int>(c.size());
  CMatrix g = CMatrix::Identity(n + 1, n + 1);
  for (int j = 0; j < n; ++j) g(0, j + 1) = -c[j];
  return MoebiusMap(g);
}

}  // namespace schwarzball
