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

#include "schwarzball/bergman.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

void require_in_ball(const Point& z, const char* context) {
  const double r2 = z.squaredNorm();
  if (!(r2 < 1.0)) {
    throw DomainError(std::string(context) +
                      ": point must lie in the open unit ball, |z| = " +
                      std::to_string(std::sqrt(r2)));
  }
}

// H with ||v||_{B,z}^2 = v^* H v.
CMatrix hermitian_form(const Point& z) { return metric_at(z).g.transpose(); }

// Shell k direction j depends only on (seed, k, j).
Point shell_point(std::uint64_t seed, int shell, int sample, int n,
                  double radius) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shell),
                    static_cast<std::uint32_t>(sample)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector z(n);
  for (int i = 0; i < n; ++i) z[i] = Complex(gauss(rng), gauss(rng));
  return z * (radius / z.norm());
}

class PointEvaluator {
 public:
  PointEvaluator(const MapSpec& f, const SphereSearchOptions& sphere)
      : f_(f), sphere_(sphere) {}

  NormEstimate operator()(const Point& z) {
    ++count_;
    return schwarzian_norm_at(f_, z, sphere_);
  }
  int count() const { return count_; }

 private:
  const MapSpec& f_;
  const SphereSearchOptions& sphere_;
  int count_ = 0;
};

// Compass search around `best`, confined to |z| <= radius.
NormEstimate refine(PointEvaluator& eval, NormEstimate best, double radius,
                    double step, int rounds) {
  const int n = static_cast<int>(best.arg_z.size());
  for (int round = 0; round < rounds; ++round) {
    for (int moves = 0; moves < 25; ++moves) {
      bool improved = false;
      for (int i = 0; i < 2 * n && !improved; ++i) {
        for (double sign : {1.0, -1.0}) {
          Point z = best.arg_z;
          z[i / 2] += (i % 2 == 0 ? Complex(sign * step, 0.0)
                                  : Complex(0.0, sign * step));
          const double r = z.norm();
          if (r > radius) z *= radius / r;
          const NormEstimate cand = eval(z);
          if (cand.value > best.value) {
            best = cand;
            improved = true;
            break;
          }
        }
      }
      if (!improved) break;
    }
    step *= 0.25;
  }
  return best;
}

}  // namespace

MetricTensor metric_at(const Point& z) {
  require_in_ball(z, "metric_at");
  const int n = static_cast<int>(z.size());
  const double s = 1.0 - z.squaredNorm();
  MetricTensor m;
  m.base = z;
  m.g = CMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex delta = (i == j) ? Complex(s) : Complex(0.0);
      m.g(i, j) = (n + 1.0) / (s * s) * (delta + std::conj(z[i]) * z[j]);
    }
  }
  return m;
}

double bergman_norm(const Point& z, const CVector& v) {
  if (v.size() != z.size()) {
    throw DimensionError("bergman_norm: vector and point dimensions differ");
  }
  const CMatrix h = hermitian_form(z);
  return std::sqrt(std::max(0.0, (v.adjoint() * h * v)(0, 0).real()));
}

NormEstimate tensor_norm(const SchwarzianTensor& t,
                         const SphereSearchOptions& options) {
  const CMatrix h = hermitian_form(t.base);
  Eigen::LLT<CMatrix> llt(h);
  if (llt.info() != Eigen::Success) {
    throw DomainError("Bergman metric is not positive definite");
  }
  // v = U^{-1} u with H = U^* U has ||v||_{B,z} = |u|.
  const CMatrix upper = llt.matrixU();
  const CMatrix input = upper.triangularView<Eigen::Upper>().solve(
      CMatrix::Identity(h.rows(), h.cols()));
  const SphereMaximum best = maximize_quadratic_map(t.sk, h, input, options);
  NormEstimate out;
  out.value = best.value;
  out.arg_v = best.arg;
  out.arg_z = t.base;
  out.starts = best.starts;
  out.converged = best.converged;
  out.r_max = t.base.norm();
  out.evaluations = 1;
  return out;
}

NormEstimate schwarzian_norm_at(const MapSpec& f, const Point& z,
                                const SphereSearchOptions& options) {
  require_in_ball(z, "schwarzian_norm_at");
  return tensor_norm(schwarzian_of(f, z, 3), options);
}

NormEstimate schwarzian_norm_sup(const MapSpec& f, const SupOptions& options) {
  if (!(options.r_max >= 0.0 && options.r_max < 1.0)) {
    throw DomainError("schwarzian_norm_sup: r_max must lie in [0, 1)");
  }
  if (options.shells < 2 || options.samples_per_shell < 1) {
    throw DomainError("schwarzian_norm_sup: need shells >= 2, samples >= 1");
  }
  const int n = f.dimension();
  const double spacing = 0.9 / (options.shells - 1);
  PointEvaluator eval(f, options.sphere);

  NormEstimate best = eval(CVector::Zero(n));
  for (int k = 1;; ++k) {
    const double radius = k * spacing;
    if (radius > options.r_max + 1e-12) break;
    NormEstimate shell_best;
    shell_best.value = -1.0;
    for (int j = 0; j < options.samples_per_shell; ++j) {
      NormEstimate e = eval(shell_point(options.seed, k, j, n, radius));
      if (e.value > shell_best.value) shell_best = std::move(e);
    }
    shell_best = refine(eval, shell_best, radius, 0.5 * spacing,
                        options.refinement_rounds);
    if (shell_best.value > best.value) best = shell_best;
  }
  best.r_max = options.r_max;
  best.evaluations = eval.count();
  return best;
}

double invariance_residual(const MapSpec& f, const BallAutomorphism& sigma,
                           const Point& z,
                           const SphereSearchOptions& options) {
  require_in_ball(z, "invariance_residual");
  const MapSpec pulled{Composition{{MapSpec{sigma}, f}}};
  const Point w = map_eval(MapSpec{sigma}, z);
  const double lhs = schwarzian_norm_at(pulled, z, options).value;
  const double rhs = schwarzian_norm_at(f, w, options).value;
  return std::abs(lhs - rhs);
}

}  // namespace schwarzball
