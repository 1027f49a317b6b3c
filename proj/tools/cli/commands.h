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

#ifndef SCHWARZBALL_TOOLS_COMMANDS_H_
#define SCHWARZBALL_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace schwarzball::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs `schwarzball <args...>`; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// CSV header of `schwarzball bounds --format csv`.
inline constexpr const char* kBoundsCsvHeader =
    "n,alpha,C_exact,C_simple,ord_bound,norm_ord_bound,lower_bound";

}  // namespace schwarzball::cli

#endif  // SCHWARZBALL_TOOLS_COMMANDS_H_
