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

#include "cli/suites.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "cli/generators.h"
#include "schwarzball/bergman.h"
#include "schwarzball/errors.h"
#include "schwarzball/family.h"
#include "schwarzball/schwarzian.h"
#include "schwarzball/variational.h"

namespace schwarzball::cli {
namespace {

constexpr int kMaxRedraws = 50;

Rng make_rng(const SuiteOptions& o, std::uint64_t stream) {
  std::seed_seq seq{o.seed, static_cast<std::uint64_t>(o.n), stream};
  return Rng(seq);
}

// Draws points until the map's jet exists there.
template <typename Draw>
JetVector jet_at_random_point(const MapSpec& f, int degree, Rng& rng,
                              Draw draw, Point& z) {
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    z = draw(rng);
    try {
      return map_jet_at(f, z, degree);
    } catch (const VanishingDenominatorError&) {
    } catch (const SingularDifferentialError&) {
    }
  }
  throw DomainError("no admissible sample point found");
}

MapSpec unit_moebius(int n) {
  CVector c = CVector::Zero(n);
  c[0] = 1.0;
  return MapSpec{normalized_moebius(c)};
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "moebius", "chainrule", "invariance", "pde",
      "lemma31", "variation", "family"};
  return names;
}

std::optional<std::vector<CheckResult>> run_suite(const std::string& name,
                                                  const SuiteOptions& options) {
  static const std::map<std::string,
                        std::function<std::vector<CheckResult>(
                            const SuiteOptions&)>>
      suites{{"moebius", moebius_suite},     {"chainrule", chainrule_suite},
             {"invariance", invariance_suite}, {"pde", pde_suite},
             {"lemma31", lemma31_suite},     {"variation", variation_suite},
             {"family", family_suite}};
  const auto it = suites.find(name);
  if (it == suites.end()) return std::nullopt;
  return it->second(options);
}

std::vector<CheckResult> moebius_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 1);
  double worst = 0.0;
  int tensors = 0;
  auto draw = [&](Rng& r) { return random_ball_point(o.n, 0.9, r); };
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f{random_moebius(o.n, 0.3, rng)};
    for (int p = 0; p < o.points; ++p) {
      Point z;
      const JetVector jf = jet_at_random_point(f, kDefaultJetDegree, rng, draw, z);
      worst = std::max(worst, schwarzian_at(jf, z).max_abs_entry());
      ++tensors;
    }
  }
  double worst_aut = 0.0;
  for (int m = 0; m < std::max(1, o.count / 4); ++m) {
    const MapSpec s{random_automorphism(o.n, 0.8, rng)};
    const Point z = random_ball_point(o.n, 0.9, rng);
    worst_aut = std::max(worst_aut, schwarzian_of(s, z).max_abs_entry());
  }
  return {check_at_most("moebius.max_abs_entry", worst, 1e-8),
          check_at_most("moebius.automorphism_max_abs_entry", worst_aut, 1e-8),
          {"moebius.tensors", static_cast<double>(tensors),
           static_cast<double>(o.count * o.points),
           tensors == o.count * o.points}};
}

std::vector<CheckResult> chainrule_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 2);
  double worst = 0.0;
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f{random_cubic(o.n, 0.2, rng)};
    const MapSpec g{random_cubic(o.n, 0.2, rng)};
    const Point z = random_ball_point(o.n, 0.3, rng);
    const JetVector jf = map_jet_at(f, z, kDefaultJetDegree);
    const SchwarzianTensor tf = schwarzian_at(jf, z);
    const SchwarzianTensor tg = schwarzian_of(g, tf.image);
    const JetVector composed = compose_maps(g, f, z, kDefaultJetDegree);
    const SchwarzianTensor direct = schwarzian_at(composed, z);
    const SchwarzianTensor chained = chain_rule_transform(
        tf, tg, jet_jacobian(jf).constant_part(), composed);
    worst = std::max(worst, max_abs_diff_sk(chained, direct));
  }
  return {check_at_most("chainrule.max_sk_diff", worst, 1e-9)};
}

std::vector<CheckResult> invariance_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 3);
  double worst = 0.0;
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f{random_normalized_cubic(o.n, 0.15, rng)};
    const BallAutomorphism sigma = random_automorphism(o.n, 0.5, rng);
    const Point z = random_ball_point(o.n, 0.5, rng);
    worst = std::max(worst, invariance_residual(f, sigma, z));
  }
  return {check_at_most("invariance.max_residual", worst, 1e-6)};
}

std::vector<CheckResult> pde_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 4);
  double canonical = 0.0;
  double pde = 0.0;
  auto draw = [&](Rng& r) { return random_ball_point(o.n, 0.3, r); };
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f = (m % 2 == 0) ? MapSpec{random_cubic(o.n, 0.2, rng)}
                                   : MapSpec{random_moebius(o.n, 0.3, rng)};
    for (int p = 0; p < o.points; ++p) {
      Point z;
      const JetVector jf = jet_at_random_point(f, kDefaultJetDegree, rng, draw, z);
      canonical = std::max(canonical, canonical_residual(schwarzian_at(jf, z)));
      pde = std::max(pde, pde_residual(jf));
    }
  }
  return {check_at_most("pde.max_canonical_residual", canonical, 1e-10),
          check_at_most("pde.max_pde_residual", pde, 1e-12)};
}

std::vector<CheckResult> lemma31_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 5);
  double lemma = 0.0;
  double symmetry = 0.0;
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f{random_normalized_cubic(o.n, 0.2, rng)};
    lemma = std::max(lemma, lemma31_check(f));
    symmetry = std::max(symmetry, matrix_a(f).symmetry_residual);
  }
  return {check_at_most("lemma31.max_residual", lemma, 1e-9),
          check_at_most("lemma31.max_asymmetry", symmetry, 1e-10)};
}

std::vector<CheckResult> variation_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 6);
  const std::vector<double> scales{1e-1, 5e-2, 2.5e-2};
  double worst = variation_expansion_check(unit_moebius(o.n), scales,
                                           random_unit_vector(o.n, rng))
                     .max_ratio;
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f = (m % 2 == 0)
                          ? MapSpec{random_normalized_cubic(o.n, 0.2, rng)}
                          : MapSpec{normalized_moebius(
                                random_ball_point(o.n, 0.9, rng))};
    worst = std::max(
        worst, variation_expansion_check(f, scales, random_unit_vector(o.n, rng))
                   .max_ratio);
  }
  return {check_at_most("variation.max_ratio", worst, kVariationRatioBound)};
}

std::vector<CheckResult> family_suite(const SuiteOptions& o) {
  Rng rng = make_rng(o, 7);
  std::vector<CheckResult> out;
  const int n = o.n;

  const TraceOrder t = trace_order_functional(normalized_jet(unit_moebius(n)));
  out.push_back(check_at_most("family.unit_moebius_trace_order_error",
                              std::abs(t.value - 0.5 * (n + 1)), 1e-10));
  out.push_back(check_at_most(
      "family.unit_moebius_bound_gap",
      std::abs(t.value - bounds_report(n, 0.0).ord_bound), 1e-10));

  // trace - n * norm over Koebe transforms, reported without a verdict.
  double excess = -std::numeric_limits<double>::infinity();
  for (int m = 0; m < o.count; ++m) {
    const MapSpec f{random_normalized_cubic(n, 0.2, rng)};
    const Point zeta = random_ball_point(n, 0.5, rng);
    const NormalizedJet g = koebe_transform(f, zeta);
    const OrderFunctionals of = order_functionals(g);
    excess = std::max(excess, of.trace_order - n * of.norm_order);
  }
  out.push_back({"family.max_trace_minus_n_norm", excess, 1e-9,
                 std::isfinite(excess)});

  PolyMap shear;
  shear.components.resize(n);
  for (int l = 0; l < n; ++l) {
    std::vector<int> e(n, 0);
    e[l] = 1;
    shear.components[l].push_back({e, 1.0});
  }
  std::vector<int> e2(n, 0);
  e2[1] = 2;
  shear.components[0].push_back({e2, 2.0});
  const Membership shear_member = membership_check(MapSpec{shear}, 0.5);
  out.push_back({"family.shear_non_member", shear_member.estimate.value, 0.5,
                 !shear_member.member});
  const Membership moebius_member = membership_check(unit_moebius(n), 0.0);
  out.push_back({"family.unit_moebius_member", moebius_member.estimate.value,
                 kMembershipMargin, moebius_member.member});
  return out;
}

}  // namespace schwarzball::cli
