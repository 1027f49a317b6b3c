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

#include "cli/generators.h"

#include <cmath>

#include <Eigen/QR>

namespace schwarzball::cli {
namespace {

void add_terms(PolyMap& p, int n, int degree, double scale, Rng& rng) {
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      e[var] = left;
      for (auto& comp : p.components) {
        comp.push_back({e, scale * random_complex(rng)});
      }
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, degree);
}

}  // namespace

Complex random_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

CVector random_unit_vector(int n, Rng& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = random_complex(rng);
  return v / v.norm();
}

Point random_ball_point(int n, double radius, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const CVector dir = random_unit_vector(n, rng);
  return radius * std::pow(uni(rng), 1.0 / (2.0 * n)) * dir;
}

CMatrix random_unitary(int n, Rng& rng) {
  CMatrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) g(r, c) = random_complex(rng);
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

MoebiusMap random_moebius(int n, double spread, Rng& rng) {
  CMatrix m = CMatrix::Identity(n + 1, n + 1);
  for (int r = 0; r <= n; ++r) {
    for (int c = 0; c <= n; ++c) m(r, c) += spread * random_complex(rng);
  }
  return MoebiusMap(m);
}

PolyMap random_normalized_cubic(int n, double scale, Rng& rng) {
  PolyMap p;
  p.components.resize(n);
  for (int l = 0; l < n; ++l) {
    std::vector<int> e(n, 0);
    e[l] = 1;
    p.components[l].push_back({e, 1.0});
  }
  add_terms(p, n, 2, scale, rng);
  add_terms(p, n, 3, scale, rng);
  return p;
}

PolyMap random_cubic(int n, double scale, Rng& rng) {
  PolyMap p;
  p.components.resize(n);
  for (int l = 0; l < n; ++l) {
    p.components[l].push_back({std::vector<int>(n, 0), scale * random_complex(rng)});
    for (int k = 0; k < n; ++k) {
      std::vector<int> e(n, 0);
      e[k] = 1;
      const Complex diag = (k == l) ? 1.0 : 0.0;
      p.components[l].push_back({e, diag + 0.3 * random_complex(rng)});
    }
  }
  add_terms(p, n, 2, scale, rng);
  add_terms(p, n, 3, scale, rng);
  return p;
}

BallAutomorphism random_automorphism(int n, double radius, Rng& rng) {
  const BallAutomorphism s = automorphism_from_center(random_ball_point(n, radius, rng));
  const CMatrix u = random_unitary(n, rng);
  BallAutomorphism out = s;
  out.a = s.a * u;
  out.c = (s.c.transpose() * u).transpose();
  return out;
}

}  // namespace schwarzball::cli
