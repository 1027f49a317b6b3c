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

#include "cli/map_spec_file.h"

#include <fstream>
#include <sstream>
#include <type_traits>

#include "schwarzball/errors.h"

namespace schwarzball::cli {
namespace {

constexpr double kBlockTolerance = 1e-9;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw SpecParseError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    fail(where, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

CVector cvector_from_json(const Json& j, int size, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    fail(where, "expected an array of " + std::to_string(size) + " complex numbers");
  }
  CVector v(size);
  for (int i = 0; i < size; ++i) {
    v[i] = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

CMatrix cmatrix_from_json(const Json& j, int rows, int cols,
                          const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    fail(where, "expected " + std::to_string(rows) + " rows");
  }
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const CVector row =
        cvector_from_json(j[r], cols, where + "[" + std::to_string(r) + "]");
    m.row(r) = row.transpose();
  }
  return m;
}

int dimension_field(const Json& j, const std::string& where) {
  const Json& n = field(j, "n", where);
  if (!n.is_number_integer()) fail(where, "\"n\" must be an integer");
  const int value = n.get<int>();
  if (value < kMinDimension) {
    fail(where, "\"n\" must be at least 2, got " + std::to_string(value));
  }
  return value;
}

PolyMap poly_from_json(const Json& j, int n, const std::string& where) {
  const Json& comps = field(j, "components", where);
  if (!comps.is_array() || static_cast<int>(comps.size()) != n) {
    fail(where, "\"components\" must list n = " + std::to_string(n) +
                    " polynomials");
  }
  PolyMap p;
  for (int l = 0; l < n; ++l) {
    const std::string w = where + ".components[" + std::to_string(l) + "]";
    if (!comps[l].is_array()) fail(w, "expected a list of terms");
    Polynomial poly;
    for (std::size_t t = 0; t < comps[l].size(); ++t) {
      const std::string wt = w + "[" + std::to_string(t) + "]";
      const Json& term = comps[l][t];
      const Json& exp = field(term, "exp", wt);
      if (!exp.is_array() || static_cast<int>(exp.size()) != n) {
        fail(wt, "\"exp\" must hold n exponents");
      }
      PolyTerm pt;
      for (const auto& e : exp) {
        if (!e.is_number_integer() || e.get<int>() < 0) {
          fail(wt, "exponents must be non-negative integers");
        }
        pt.exponents.push_back(e.get<int>());
      }
      pt.coeff = complex_from_json(term, wt);
      poly.push_back(std::move(pt));
    }
    p.components.push_back(std::move(poly));
  }
  return p;
}

Json poly_to_json(const PolyMap& p) {
  Json comps = Json::array();
  for (const auto& poly : p.components) {
    Json terms = Json::array();
    for (const auto& t : poly) {
      Json term;
      term["exp"] = t.exponents;
      term["re"] = t.coeff.real();
      term["im"] = t.coeff.imag();
      terms.push_back(std::move(term));
    }
    comps.push_back(std::move(terms));
  }
  return comps;
}

}  // namespace

Json complex_to_json(Complex c) {
  Json j;
  j["re"] = c.real();
  j["im"] = c.imag();
  return j;
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected {\"re\": x, \"im\": y}");
  return {number(field(j, "re", where), where + ".re"),
          number(field(j, "im", where), where + ".im")};
}

Json cvector_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

Json cmatrix_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json map_spec_to_json(const MapSpec& spec) {
  Json j;
  j["n"] = spec.dimension();
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PolyMap>) {
          j["kind"] = "poly";
          j["components"] = poly_to_json(m);
        } else if constexpr (std::is_same_v<T, MoebiusMap>) {
          j["kind"] = "moebius";
          j["matrix"] = cmatrix_json(m.coeffs());
        } else if constexpr (std::is_same_v<T, BallAutomorphism>) {
          j["kind"] = "automorphism";
          j["A"] = cmatrix_json(m.a);
          j["B"] = cvector_json(m.b);
          j["C"] = cvector_json(m.c);
          j["D"] = complex_to_json(m.d);
        } else {
          j["kind"] = "compose";
          Json maps = Json::array();
          for (const auto& s : m.stages) maps.push_back(map_spec_to_json(s));
          j["maps"] = std::move(maps);
        }
      },
      spec.kind);
  return j;
}

MapSpec map_spec_from_json(const Json& j) {
  const std::string where = "map";
  if (!j.is_object()) fail(where, "expected a JSON object");
  const int n = dimension_field(j, where);
  const Json& kind_field = field(j, "kind", where);
  if (!kind_field.is_string()) fail(where, "\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  try {
    if (kind == "poly") return MapSpec{poly_from_json(j, n, where)};
    if (kind == "moebius") {
      return MapSpec{MoebiusMap(
          cmatrix_from_json(field(j, "matrix", where), n + 1, n + 1,
                            where + ".matrix"))};
    }
    if (kind == "automorphism") {
      BallAutomorphism s;
      s.a = cmatrix_from_json(field(j, "A", where), n, n, where + ".A");
      s.b = cvector_from_json(field(j, "B", where), n, where + ".B");
      s.c = cvector_from_json(field(j, "C", where), n, where + ".C");
      s.d = complex_from_json(field(j, "D", where), where + ".D");
      const AutomorphismResidual r = automorphism_validate(s);
      if (r.max_residual() > kBlockTolerance || !r.maps_into_ball) {
        fail(where, "automorphism block identities fail (residual " +
                        std::to_string(r.max_residual()) + ")");
      }
      return MapSpec{std::move(s)};
    }
    if (kind == "compose") {
      const Json& maps = field(j, "maps", where);
      if (!maps.is_array() || maps.empty()) {
        fail(where, "\"maps\" must be a non-empty list");
      }
      Composition c;
      for (const auto& m : maps) {
        MapSpec stage = map_spec_from_json(m);
        if (stage.dimension() != n) {
          fail(where, "composed map has dimension " +
                          std::to_string(stage.dimension()) + ", expected " +
                          std::to_string(n));
        }
        c.stages.push_back(std::move(stage));
      }
      return MapSpec{std::move(c)};
    }
  } catch (const MathError& e) {
    fail(where, e.what());
  }
  fail(where, "unknown kind \"" + kind + "\"");
}

Json map_spec_file_to_json(const MapSpecFile& file) {
  Json j = map_spec_to_json(file.spec);
  if (file.label) j["label"] = *file.label;
  return j;
}

MapSpecFile map_spec_file_from_json(const Json& j) {
  MapSpecFile f;
  f.spec = map_spec_from_json(j);
  f.n = f.spec.dimension();
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail("map", "\"label\" must be a string");
    f.label = j["label"].get<std::string>();
  }
  return f;
}

MapSpecFile parse_map_spec_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecParseError(std::string("invalid JSON: ") + e.what());
  }
  return map_spec_file_from_json(j);
}

MapSpecFile read_map_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open map file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map_spec_file(buf.str());
}

std::string serialize_map_spec_file(const MapSpecFile& file) {
  return map_spec_file_to_json(file).dump(2);
}

}  // namespace schwarzball::cli
