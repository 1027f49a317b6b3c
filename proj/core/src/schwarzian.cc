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

#include "schwarzball/schwarzian.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

void require_schwarzian_jet(const JetVector& jf) {
  require_uniform(jf, "schwarzian");
  const int n = static_cast<int>(jf.size());
  if (n < kMinDimension) {
    throw DimensionError("the Schwarzian tensors need n >= 2, got n = " +
                         std::to_string(n));
  }
  if (jf.front().vars() != n) {
    throw DimensionError("map jet has " + std::to_string(n) +
                         " components in " +
                         std::to_string(jf.front().vars()) + " variables");
  }
  if (jf.front().degree() < 3) {
    throw DimensionError("the Schwarzian tensors need jets of degree >= 3");
  }
}

// JF / JF(center).  S^0 is homogeneous of degree zero in u0, so rescaling JF
// by a constant never changes it, and the constant term 1 keeps log and pow
// off the branch cut.
Jet unit_jacobian(const JetMatrix& df) {
  Jet jac = jet_det(df);
  const Complex j0 = jac.constant_term();
  if (std::abs(j0) <= 1e-12) {
    throw SingularDifferentialError(
        "the differential is singular at the expansion center");
  }
  return jac * (1.0 / j0);
}

struct Gradients {
  CVector first;   // d_k u
  CMatrix second;  // d_ij u
  Complex value;
};

Gradients gradients_of(const Jet& u) {
  const int n = u.vars();
  Gradients g{CVector(n), CMatrix(n, n), u.constant_term()};
  for (int k = 0; k < n; ++k) g.first[k] = u.linear_coeff(k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g.second(i, j) = second_derivative(u, i, j);
  }
  return g;
}

CMatrix symmetrized(const CMatrix& m) { return 0.5 * (m + m.transpose()); }

CMatrix s0_from(const std::vector<CMatrix>& sk, const Gradients& u) {
  const int n = static_cast<int>(sk.size());
  CMatrix s0(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex acc = u.second(i, j);
      for (int k = 0; k < n; ++k) acc -= sk[k](i, j) * u.first[k];
      s0(i, j) = acc / u.value;
    }
  }
  return symmetrized(s0);
}

}  // namespace

double SchwarzianTensor::max_abs_entry() const {
  double m = s0.size() ? s0.cwiseAbs().maxCoeff() : 0.0;
  for (const auto& s : sk) m = std::max(m, s.cwiseAbs().maxCoeff());
  return m;
}

SchwarzianTensor schwarzian_at(const JetVector& jf, const Point& base) {
  require_schwarzian_jet(jf);
  const int n = static_cast<int>(jf.size());
  if (base.size() != n) {
    throw DimensionError("base point dimension differs from the map jet");
  }

  const JetMatrix df = jet_jacobian(jf);
  const CMatrix df0 = df.constant_part();
  if (std::abs(df0.determinant()) <= 1e-12) {
    throw SingularDifferentialError(
        "the differential is singular at the expansion center");
  }
  const CMatrix df_inv = df0.inverse();  // (df_inv)_{kl} = dz_k / df_l
  const Jet jac = unit_jacobian(df);
  const Jet log_jac = jet_log(jac);
  CVector dlog(n);
  for (int i = 0; i < n; ++i) dlog[i] = log_jac.linear_coeff(i);

  SchwarzianTensor t;
  t.base = base;
  t.image = constant_terms(jf);
  t.sk.assign(n, CMatrix::Zero(n, n));
  const double inv_np1 = 1.0 / (n + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CVector hess(n);
      for (int l = 0; l < n; ++l) hess[l] = second_derivative(jf[l], i, j);
      const CVector pulled = df_inv * hess;
      for (int k = 0; k < n; ++k) {
        Complex v = pulled[k];
        if (k == i) v -= inv_np1 * dlog[j];
        if (k == j) v -= inv_np1 * dlog[i];
        t.sk[k](i, j) = v;
      }
    }
  }
  for (auto& s : t.sk) s = symmetrized(s);

  const Jet u0 = jet_pow(jac, Complex(-inv_np1));
  t.s0 = s0_from(t.sk, gradients_of(u0));
  return t;
}

SchwarzianTensor schwarzian_of(const MapSpec& f, const Point& z, int degree) {
  return schwarzian_at(map_jet_at(f, z, degree), z);
}

CVector schwarzian_apply(const SchwarzianTensor& t, const CVector& v) {
  const int n = t.dimension();
  if (v.size() != n) {
    throw DimensionError("direction has dimension " + std::to_string(v.size()) +
                         ", tensor has " + std::to_string(n));
  }
  CVector out(n);
  for (int k = 0; k < n; ++k) out[k] = v.transpose() * t.sk[k] * v;
  return out;
}

SchwarzianTensor chain_rule_transform(const SchwarzianTensor& tf,
                                      const SchwarzianTensor& tg,
                                      const CMatrix& df,
                                      const JetVector& composed) {
  const int n = tf.dimension();
  if (tg.dimension() != n || df.rows() != n || df.cols() != n) {
    throw DimensionError("chain rule: inconsistent dimensions");
  }
  const double scale = std::max(1.0, tf.image.norm());
  if ((tg.base - tf.image).norm() > 1e-10 * scale) {
    throw ContractError(
        "chain rule: the outer tensor is not based at F(z)");
  }
  const CMatrix df_inv = df.inverse();
  SchwarzianTensor out;
  out.base = tf.base;
  out.image = tg.image;
  out.sk.assign(n, CMatrix::Zero(n, n));
  std::vector<CMatrix> pulled(n);
  for (int r = 0; r < n; ++r) pulled[r] = df.transpose() * tg.sk[r] * df;
  for (int k = 0; k < n; ++k) {
    CMatrix acc = tf.sk[k];
    for (int r = 0; r < n; ++r) acc += df_inv(k, r) * pulled[r];
    out.sk[k] = symmetrized(acc);
  }
  const SchwarzianTensor direct = schwarzian_at(composed, tf.base);
  if ((direct.image - tg.image).norm() > 1e-10 * std::max(1.0, tg.image.norm())) {
    throw ContractError("chain rule: composed jet is not centered at G(F(z))");
  }
  out.s0 = direct.s0;
  return out;
}

double canonical_residual(const SchwarzianTensor& t) {
  const int n = t.dimension();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (int j = 0; j < n; ++j) acc += t.sk[j](i, j);
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

double pde_residual(const JetVector& jf) {
  require_schwarzian_jet(jf);
  const int n = static_cast<int>(jf.size());
  const SchwarzianTensor t = schwarzian_at(jf, CVector::Zero(n));
  const Jet log_jac = jet_log(unit_jacobian(jet_jacobian(jf)));
  const Jet u0 = jet_exp(log_jac * Complex(-1.0 / (n + 1)));
  const Gradients u = gradients_of(u0);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex r = u.second(i, j) - t.s0(i, j) * u.value;
      for (int k = 0; k < n; ++k) r -= t.sk[k](i, j) * u.first[k];
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

double max_abs_diff_sk(const SchwarzianTensor& a, const SchwarzianTensor& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionError("tensor dimensions differ");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.sk.size(); ++k) {
    m = std::max(m, (a.sk[k] - b.sk[k]).cwiseAbs().maxCoeff());
  }
  return m;
}

double max_abs_diff(const SchwarzianTensor& a, const SchwarzianTensor& b) {
  return std::max(max_abs_diff_sk(a, b),
                  (a.s0 - b.s0).cwiseAbs().maxCoeff());
}

}  // namespace schwarzball
