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

#include "cli/report.h"

#include <algorithm>
#include <cmath>

namespace schwarzball::cli {

CheckResult check_at_most(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance,
          std::isfinite(value) && value <= tolerance};
}

bool Report::all_pass() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

Json report_to_json(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["seed"] = report.seed;
  j["version"] = kToolVersion;
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json e;
    e["name"] = r.name;
    // Non-finite values have no JSON spelling; null marks them.
    if (std::isfinite(r.value)) {
      e["value"] = r.value;
    } else {
      e["value"] = nullptr;
    }
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  j["all_pass"] = report.all_pass();
  j["data"] = report.data;
  j["timing"] = Json{{"seconds", report.seconds}};
  return j;
}

}  // namespace schwarzball::cli
