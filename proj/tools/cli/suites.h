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

// Seeded property suites behind `schwarzball verify`.

#ifndef SCHWARZBALL_TOOLS_SUITES_H_
#define SCHWARZBALL_TOOLS_SUITES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/report.h"

namespace schwarzball::cli {

struct SuiteOptions {
  int n = 2;
  std::uint64_t seed = 7;
  /// Number of random maps (or pairs, or centers) per suite.
  int count = 20;
  /// Points per map where a suite samples points.
  int points = 5;
};

const std::vector<std::string>& suite_names();

/// Empty when `name` is not a suite.
std::optional<std::vector<CheckResult>> run_suite(const std::string& name,
                                                  const SuiteOptions& options);

std::vector<CheckResult> moebius_suite(const SuiteOptions& options);
std::vector<CheckResult> chainrule_suite(const SuiteOptions& options);
std::vector<CheckResult> invariance_suite(const SuiteOptions& options);
std::vector<CheckResult> pde_suite(const SuiteOptions& options);
std::vector<CheckResult> lemma31_suite(const SuiteOptions& options);
std::vector<CheckResult> variation_suite(const SuiteOptions& options);
std::vector<CheckResult> family_suite(const SuiteOptions& options);

}  // namespace schwarzball::cli

#endif  // SCHWARZBALL_TOOLS_SUITES_H_
