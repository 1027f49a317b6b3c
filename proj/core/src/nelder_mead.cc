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

#include "schwarzball/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "schwarzball/errors.h"

namespace schwarzball {
namespace {

using Vertex = std::vector<double>;

Vertex affine(const Vertex& a, const Vertex& b, double t) {
  // a + t (b - a)
  Vertex out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

}  // namespace

NelderMeadResult nelder_mead(
    const std::function<double(std::span<const double>)>& f, Vertex x0,
    const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw DimensionError("nelder_mead: empty parameter vector");

  NelderMeadResult result;
  auto eval = [&](const Vertex& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  auto out_of_budget = [&] {
    return result.evaluations >= options.max_evaluations;
  };

  std::vector<Vertex> simplex{x0};
  for (std::size_t i = 0; i < dim; ++i) {
    Vertex v = x0;
    v[i] += options.initial_step;
    simplex.push_back(std::move(v));
  }
  std::vector<double> values;
  for (const auto& v : simplex) values.push_back(eval(v));

  std::vector<std::size_t> order(dim + 1);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return values[a] < values[b];
    });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];

    double diameter = 0.0;
    for (const auto& v : simplex) {
      double d = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        d = std::max(d, std::abs(v[i] - simplex[best][i]));
      }
      diameter = std::max(diameter, d);
    }
    const double spread = values[worst] - values[best];
    if (std::isfinite(spread) && spread <= options.value_tolerance &&
        diameter <= options.size_tolerance) {
      result.converged = true;
      break;
    }
    if (out_of_budget()) break;

    Vertex centroid(dim, 0.0);
    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == worst) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k][i] / dim;
    }

    const Vertex reflected = affine(centroid, simplex[worst], -1.0);
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const bool expand = !out_of_budget();
      const Vertex expanded = affine(centroid, simplex[worst], -2.0);
      const double fe = expand ? eval(expanded) : fr;
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    if (out_of_budget()) {
      if (outside) {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      break;
    }
    const Vertex contracted =
        outside ? affine(centroid, reflected, 0.5)
                : affine(centroid, simplex[worst], 0.5);
    const double fc = eval(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= dim && !out_of_budget(); ++k) {
      if (k == best) continue;
      simplex[k] = affine(simplex[best], simplex[k], 0.5);
      values[k] = eval(simplex[k]);
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(it - values.begin())];
  result.value = *it;
  return result;
}

}  // namespace schwarzball
