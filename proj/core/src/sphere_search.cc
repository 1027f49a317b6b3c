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

#include "schwarzball/sphere_search.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

constexpr double kArmijo = 1e-4;

class Objective {
 public:
  Objective(std::span<const CMatrix> forms, const CMatrix& metric,
            const CMatrix& input)
      : forms_(forms), metric_(metric), input_(input) {}

  CVector image(const CVector& v) const {
    CVector w(static_cast<Eigen::Index>(forms_.size()));
    for (std::size_t k = 0; k < forms_.size(); ++k) {
      w[k] = v.transpose() * forms_[k] * v;
    }
    return w;
  }

  double value(const CVector& u) const {
    const CVector w = image(input_ * u);
    return std::max(0.0, (w.adjoint() * metric_ * w)(0, 0).real());
  }

  // Complex gradient G with df = Re(G^* du).
  CVector gradient(const CVector& u) const {
    const CVector v = input_ * u;
    const CVector w = image(v);
    const Eigen::RowVectorXcd a = w.adjoint() * metric_;
    Eigen::RowVectorXcd g = Eigen::RowVectorXcd::Zero(u.size());
    for (std::size_t k = 0; k < forms_.size(); ++k) {
      g += a[k] * (v.transpose() * forms_[k] * input_);
    }
    return 4.0 * g.adjoint();
  }

 private:
  std::span<const CMatrix> forms_;
  const CMatrix& metric_;
  const CMatrix& input_;
};

struct Ascent {
  CVector u;
  double value;
  bool converged;
  int iterations;
};

Ascent ascend(const Objective& f, CVector u, const SphereSearchOptions& opt,
              int max_iterations) {
  u.normalize();
  double fu = f.value(u);
  double step = 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    CVector g = f.gradient(u);
    const Complex radial = u.dot(g);  // u^* g
    g -= radial.real() * u;
    const double gnorm = g.norm();
    if (gnorm <= 1e-300) {
      return {u, fu, true, it};
    }
    double t = std::min(step * 2.0, 1e6);
    bool accepted = false;
    CVector next;
    double fnext = fu;
    while (t * gnorm >= opt.min_step) {
      next = (u + t * g).normalized();
      fnext = f.value(next);
      if (fnext >= fu + kArmijo * t * gnorm * gnorm) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) return {u, fu, true, it};
    u = next;
    fu = fnext;
    step = t;
  }
  return {u, fu, false, max_iterations};
}

}  // namespace

double quadratic_map_norm(std::span<const CMatrix> forms,
                          const CMatrix& output_metric, const CVector& v) {
  const CMatrix id = CMatrix::Identity(v.size(), v.size());
  return std::sqrt(Objective(forms, output_metric, id).value(v));
}

SphereMaximum maximize_quadratic_map(std::span<const CMatrix> forms,
                                     const CMatrix& output_metric,
                                     const CMatrix& input_map,
                                     const SphereSearchOptions& options) {
  const int n = static_cast<int>(input_map.cols());
  if (n < 1 || input_map.rows() != n) {
    throw DimensionError("sphere search: input map must be square");
  }
  for (const auto& q : forms) {
    if (q.rows() != n || q.cols() != n) {
      throw DimensionError("sphere search: form has wrong size");
    }
  }
  if (output_metric.rows() != static_cast<Eigen::Index>(forms.size())) {
    throw DimensionError("sphere search: output metric has wrong size");
  }
  if (options.starts < 1) {
    throw DimensionError("sphere search needs at least one start");
  }

  const Objective f(forms, output_metric, input_map);
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Ascent best_run{CVector(), -1.0, false, 0};
  for (int s = 0; s < options.starts; ++s) {
    // Coordinate axes first, then seeded Gaussian directions; the sequence
    // only grows with `starts`, so more starts never lower the maximum.
    CVector u0(n);
    if (s < n) {
      u0.setZero();
      u0[s] = 1.0;
    } else {
      for (int i = 0; i < n; ++i) u0[i] = Complex(gauss(rng), gauss(rng));
    }
    Ascent a = ascend(f, u0, options, options.max_iterations);
    if (a.value > best_run.value) best_run = std::move(a);
  }
  if (!best_run.converged && options.polish_iterations > 0) {
    const Ascent more = ascend(f, best_run.u, options, options.polish_iterations);
    if (more.value >= best_run.value) {
      best_run = {more.u, more.value, more.converged,
                  best_run.iterations + more.iterations};
    }
  }
  SphereMaximum best;
  best.value = std::sqrt(std::max(best_run.value, 0.0));
  best.arg = input_map * best_run.u;
  best.converged = best_run.converged;
  best.iterations = best_run.iterations;
  best.starts = options.starts;
  return best;
}

}  // namespace schwarzball
