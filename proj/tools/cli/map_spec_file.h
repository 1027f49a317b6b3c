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

// JSON map files.
//
//   {"n": 2, "kind": "poly", "label": "shear",
//    "components": [[{"exp": [1, 0], "re": 1, "im": 0},
//                    {"exp": [0, 2], "re": 0.5, "im": 0}],
//                   [{"exp": [0, 1], "re": 1, "im": 0}]]}
//   {"n": 2, "kind": "moebius", "matrix": [[{"re": 1, "im": 0}, ...], ...]}
//   {"n": 2, "kind": "automorphism", "A": [[c, c], [c, c]], "B": [c, c],
//    "C": [c, c], "D": c}
//   {"n": 2, "kind": "compose", "maps": [inner, ..., outer]}
//
// c is a complex number {"re": x, "im": y}.

#ifndef SCHWARZBALL_TOOLS_MAP_SPEC_FILE_H_
#define SCHWARZBALL_TOOLS_MAP_SPEC_FILE_H_

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "schwarzball/maps.h"

namespace schwarzball::cli {

using Json = nlohmann::ordered_json;

/// Malformed input: bad JSON, unknown kinds, inconsistent dimensions, or a
/// coefficient payload that does not define a valid map.
class SpecParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MapSpecFile {
  int n = 2;
  MapSpec spec;
  std::optional<std::string> label;
};

Json complex_to_json(Complex c);
Complex complex_from_json(const Json& j, const std::string& where);
Json cvector_json(const CVector& v);
Json cmatrix_json(const CMatrix& m);

Json map_spec_to_json(const MapSpec& spec);
MapSpec map_spec_from_json(const Json& j);

Json map_spec_file_to_json(const MapSpecFile& file);
MapSpecFile map_spec_file_from_json(const Json& j);

MapSpecFile parse_map_spec_file(const std::string& text);
MapSpecFile read_map_spec_file(const std::string& path);
std::string serialize_map_spec_file(const MapSpecFile& file);

}  // namespace schwarzball::cli

#endif  // SCHWARZBALL_TOOLS_MAP_SPEC_FILE_H_
