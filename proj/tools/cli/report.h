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

#ifndef SCHWARZBALL_TOOLS_REPORT_H_
#define SCHWARZBALL_TOOLS_REPORT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cli/map_spec_file.h"

namespace schwarzball::cli {

inline constexpr const char* kToolVersion = SCHWARZBALL_VERSION;

/// One numeric claim.  `pass` is value <= tolerance unless built otherwise.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

CheckResult check_at_most(std::string name, double value, double tolerance);

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;
  Json data = Json::object();
  double seconds = 0.0;

  bool all_pass() const;
  void add(CheckResult r) { results.push_back(std::move(r)); }
};

/// Keys in a fixed order; "timing" is the only run-dependent field.
Json report_to_json(const Report& report);

}  // namespace schwarzball::cli

#endif  // SCHWARZBALL_TOOLS_REPORT_H_
