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

#include "schwarzball/variational.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "schwarzball/errors.h"
#include "schwarzball/nelder_mead.h"
#include "schwarzball/schwarzian.h"

namespace schwarzball {
namespace {

CVector random_unit(int n, std::uint64_t seed) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(n)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  CVector u(n);
  for (int i = 0; i < n; ++i) u[i] = Complex(normal(rng), normal(rng));
  return u / u.norm();
}

std::vector<std::vector<int>> monomials_of_degree(int n, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(n, 0);
  // Enumerate compositions of `degree` into n parts, lexicographically
  // descending in the first exponent.
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

}  // namespace

VariationReport matrix_a(const MapSpec& f, int degree) {
  const NormalizedJet g = normalized_jet(f, degree);
  const int n = g.dimension();
  const SchwarzianTensor t = schwarzian_at(g.components(), CVector::Zero(n));

  VariationReport r;
  r.lambda = grad_jacobian(g);
  r.b = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) r.b += t.sk[k] * r.lambda[k];
  r.b0 = t.s0;
  r.a = r.b - (n + 1.0) * r.b0 +
        (r.lambda * r.lambda.transpose()) / static_cast<double>(n + 1);
  const CVector lbar = r.lambda.conjugate();
  r.extremal_residual = (r.a * lbar - (n + 1.0) * r.lambda).norm();
  r.conjugated_residual = (r.a * lbar - (n + 1.0) * lbar).norm();
  r.symmetry_residual = (r.a - r.a.transpose()).cwiseAbs().maxCoeff();
  return r;
}

double lemma31_check(const MapSpec& f, int degree) {
  const NormalizedJet g = normalized_jet(f, degree);
  const int n = g.dimension();
  const Jet log_jac = jet_log(jet_det(jet_jacobian(g.components())));
  const CMatrix a = matrix_a(f, degree).a;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst,
                       std::abs(second_derivative(log_jac, i, j) - a(i, j)));
    }
  }
  return worst;
}

VariationScaling variation_expansion_check(const MapSpec& f,
                                           const std::vector<double>& scales,
                                           const CVector& direction) {
  const int n = f.dimension();
  if (direction.size() != n) {
    throw DimensionError("variation direction has the wrong dimension");
  }
  if (!(direction.norm() > 0.0)) {
    throw DomainError("variation direction must be nonzero");
  }
  if (scales.empty()) throw DomainError("variation check needs scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0 && scales[i] < 1.0) ||
        (i > 0 && !(scales[i] < scales[i - 1]))) {
      throw DomainError(
          "variation scales must lie in (0, 1) and strictly decrease");
    }
  }

  const VariationReport rep = matrix_a(f);
  VariationScaling out;
  out.direction = direction / direction.norm();
  out.scales = scales;
  const CVector& u = out.direction;
  for (double s : scales) {
    const CVector zeta = s * u;
    const NormalizedJet g = koebe_transform(f, zeta, 3);
    const CVector predicted =
        rep.lambda + rep.a * zeta - (n + 1.0) * zeta.conjugate();
    const double err = (grad_jacobian(g) - predicted).norm();
    out.errors.push_back(err);
    out.normalized.push_back(err / (s * s));
  }
  for (std::size_t i = 1; i < out.normalized.size(); ++i) {
    const double ratio = std::max(out.normalized[i], kVariationFloor) /
                         std::max(out.normalized[i - 1], kVariationFloor);
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  out.bounded = out.max_ratio <= kVariationRatioBound;
  return out;
}

VariationScaling variation_expansion_check(const MapSpec& f,
                                           const std::vector<double>& scales,
                                           std::uint64_t seed) {
  return variation_expansion_check(f, scales,
                                   random_unit(f.dimension(), seed));
}

DecoupledResiduals decoupled_residuals(const MapSpec& f, int degree) {
  const int n = f.dimension();
  const CVector lambda = grad_jacobian(normalized_jet(f, degree));

  // grad(J Ft)(0) = V^t Lambda, so V^t = unitary_to_axis(Lambda).
  DecoupledResiduals r;
  r.rotation = unitary_to_axis(lambda).transpose();
  const MapSpec rotated{Composition{{MapSpec{linear_moebius(r.rotation)}, f,
                                     MapSpec{linear_moebius(
                                         r.rotation.adjoint())}}}};
  const NormalizedJet g = normalized_jet(rotated, degree);
  const CVector rotated_lambda = grad_jacobian(g);
  r.lambda = rotated_lambda[0].real();
  const SchwarzianTensor t = schwarzian_at(g.components(), CVector::Zero(n));
  const double np1 = n + 1.0;
  r.s1_11 = t.sk[0](0, 0);
  r.s0_11 = t.s0(0, 0);
  r.quadratic = r.lambda * r.lambda + np1 * r.s1_11 * r.lambda -
                np1 * np1 * r.s0_11 - np1 * np1;
  r.off = CVector(n - 1);
  for (int j = 1; j < n; ++j) {
    r.off[j - 1] = t.sk[0](0, j) * r.lambda - np1 * t.s0(0, j);
    r.max_off = std::max(r.max_off, std::abs(r.off[j - 1]));
  }
  return r;
}

BoundReport bounds_report(int n, double alpha) {
  if (n < kMinDimension) {
    throw DimensionError("bounds need n >= 2, got n = " + std::to_string(n));
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("bounds need a finite alpha >= 0");
  }
  const double nd = n;
  const double root = std::sqrt(nd + 1.0);
  BoundReport b;
  b.n = n;
  b.alpha = alpha;
  b.c_exact = (4.0 * nd * nd + 2.0 * nd - 2.0 + (nd + 1.0) / (nd - 1.0)) *
                  alpha * alpha +
              (4.0 * root + 8.0 * root / (nd - 1.0)) * alpha;
  b.c_simple = 6.0 * nd * nd * alpha * alpha + 16.0 * std::sqrt(nd) * alpha;
  const double radical =
      std::sqrt(1.0 + 0.25 * (nd + 1.0) * alpha * alpha + b.c_exact);
  b.ord_bound = 0.5 * (nd + 1.0) * (0.5 * root * alpha + radical);
  b.norm_ord_bound = (nd + 1.0) * alpha + radical;
  b.lower_bound = 1.0 + 0.5 * std::sqrt(3.0) * alpha;
  if (b.c_exact > b.c_simple) {
    throw ContractError("C_exact exceeds C_simple at n = " +
                        std::to_string(n) + ", alpha = " +
                        std::to_string(alpha));
  }
  return b;
}

MoebiusSubfamily::MoebiusSubfamily(int n) : n_(n) {
  if (n < kMinDimension) throw DimensionError("Moebius subfamily needs n >= 2");
}

MapSpec MoebiusSubfamily::map(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != parameter_count()) {
    throw DimensionError("Moebius subfamily: wrong parameter count");
  }
  CVector c(n_);
  for (int j = 0; j < n_; ++j) c[j] = Complex(params[2 * j], params[2 * j + 1]);
  const double r = c.norm();
  if (r > 1.0) c /= r;
  return MapSpec{normalized_moebius(c)};
}

CubicBoxSubfamily::CubicBoxSubfamily(int n, double half_width)
    : n_(n), half_width_(half_width) {
  if (n < kMinDimension) throw DimensionError("cubic subfamily needs n >= 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("cubic subfamily needs a positive half width");
  }
  for (int d = 2; d <= 3; ++d) {
    for (auto& m : monomials_of_degree(n, d)) monomials_.push_back(m);
  }
}

MapSpec CubicBoxSubfamily::map(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != parameter_count()) {
    throw DimensionError("cubic subfamily: wrong parameter count");
  }
  PolyMap p;
  std::size_t idx = 0;
  for (int l = 0; l < n_; ++l) {
    Polynomial comp;
    std::vector<int> e(n_, 0);
    e[l] = 1;
    comp.push_back({e, 1.0});
    for (const auto& m : monomials_) {
      const double v = std::clamp(params[idx++], -half_width_, half_width_);
      if (v != 0.0) comp.push_back({m, v});
    }
    p.components.push_back(std::move(comp));
  }
  return MapSpec{std::move(p)};
}

SearchResult extremal_search(const Subfamily& family,
                             const SearchConfig& config) {
  const int count = family.parameter_count();
  if (count <= 0) {
    throw InfeasibleError("extremal search: empty parameterization");
  }
  if (!(config.alpha >= 0.0)) {
    throw DomainError("extremal search: alpha must be non-negative");
  }
  if (config.budget <= 0 || config.restarts <= 0) {
    throw DomainError("extremal search: budget and restarts must be positive");
  }

  SearchResult result;
  auto objective = [&](std::span<const double> p) {
    ++result.evaluations;
    try {
      const MapSpec m = family.map(p);
      const double grad = grad_jacobian(normalized_jet(m, 3)).norm();
      const double excess =
          std::max(0.0, schwarzian_norm_sup(m, config.sup).value - config.alpha);
      return -grad + config.penalty * excess * excess;
    } catch (const MathError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const std::vector<double> origin(count, 0.0);
  try {
    const MapSpec start = family.map(origin);
    const double est = schwarzian_norm_sup(start, config.sup).value;
    if (est > config.alpha + kMembershipMargin) {
      throw InfeasibleError("extremal search: the start has ||SF|| ~ " +
                            std::to_string(est) + " > alpha");
    }
  } catch (const InfeasibleError&) {
    throw;
  } catch (const MathError& e) {
    throw InfeasibleError(std::string("extremal search: invalid start: ") +
                          e.what());
  }

  std::vector<double> best_x;
  double best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    const int remaining = config.budget - result.evaluations;
    if (remaining <= count + 1) {
      result.budget_exhausted = true;
      break;
    }
    std::vector<double> x0 = origin;
    if (r > 0) {
      std::seed_seq seq{config.seed, static_cast<std::uint64_t>(r)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> uni(-family.scale(),
                                                 family.scale());
      for (auto& v : x0) v = uni(rng);
    }
    NelderMeadOptions nm;
    nm.max_evaluations = remaining / (config.restarts - r);
    nm.initial_step = 0.25 * family.scale();
    const NelderMeadResult run = nelder_mead(objective, x0, nm);
    if (!run.converged) result.budget_exhausted = true;
    if (run.value < best_value ||
        (run.value == best_value && run.x < best_x)) {
      best_value = run.value;
      best_x = run.x;
    }
  }
  if (best_x.empty() || !std::isfinite(best_value)) {
    throw InfeasibleError("extremal search: no finite objective value found");
  }

  result.params = best_x;
  result.best = family.map(best_x);
  const VariationReport rep = matrix_a(result.best);
  result.achieved_order = 0.5 * rep.lambda.norm();
  result.extremal_residual = rep.extremal_residual;
  result.norm_estimate = schwarzian_norm_sup(result.best, config.sup);
  result.feasible =
      result.norm_estimate.value <= config.alpha + kMembershipMargin;
  result.ord_bound = bounds_report(family.dimension(), config.alpha).ord_bound;
  result.margin = result.ord_bound - result.achieved_order;
  return result;
}

}  // namespace schwarzball
