// Copyright 2026 The Heegaard Authors.
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

// Diagram file format (UTF-8 JSON). Curve indices are 1-based in files:
//
//   {"genus": 1,
//    "points": [{"id": 1, "alpha": 1, "beta": 1, "sign": 1}, ...],
//    "alpha_words": [[1, 2]], "beta_words": [[1, 2]]}

#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "heegaard/diagram.hpp"
#include "heegaard/intmat.hpp"

namespace heegaard {

using Json = nlohmann::ordered_json;

inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<int64_t>::min() && x <= std::numeric_limits<int64_t>::max())
    return static_cast<int64_t>(x);
  return x.str();
}

inline Json to_json(const SignedMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline Json to_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (auto& x : xs) out.push_back(to_json(x));
  return out;
}

/// Word data from file text. Structural problems are ParseErrors; the
/// topological checks happen in HeegaardDiagram::build.
inline DiagramData parse_diagram_data(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  auto need_int = [](const Json& v, const std::string& what) -> int64_t {
    if (!v.is_number_integer()) throw ParseError(what + " must be an integer");
    return v.get<int64_t>();
  };
  auto small = [](int64_t v, const std::string& what) {
    if (v < -1000000000 || v > 1000000000) throw ParseError(what + " out of range");
    return static_cast<int>(v);
  };
  if (!j.is_object()) throw ParseError("top level must be an object");
  for (const char* key : {"genus", "points", "alpha_words", "beta_words"})
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  DiagramData d;
  d.genus = small(need_int(j["genus"], "genus"), "genus");
  if (!j["points"].is_array()) throw ParseError("\"points\" must be an array");
  for (const auto& p : j["points"]) {
    if (!p.is_object()) throw ParseError("each point must be an object");
    for (const char* key : {"id", "alpha", "beta", "sign"})
      if (!p.contains(key)) throw ParseError(std::string("point missing field \"") + key + "\"");
    Point q;
    q.id = small(need_int(p["id"], "point id"), "point id");
    q.alpha = small(need_int(p["alpha"], "alpha index"), "alpha index") - 1;
    q.beta = small(need_int(p["beta"], "beta index"), "beta index") - 1;
    q.sign = small(need_int(p["sign"], "sign"), "sign");
    d.points.push_back(q);
  }
  for (CurveKind k : {CurveKind::Alpha, CurveKind::Beta}) {
    const std::string key = k == CurveKind::Alpha ? "alpha_words" : "beta_words";
    if (!j[key].is_array()) throw ParseError("\"" + key + "\" must be an array of arrays");
    for (const auto& w : j[key]) {
      if (!w.is_array()) throw ParseError("\"" + key + "\" must be an array of arrays");
      std::vector<int> word;
      for (const auto& x : w) word.push_back(small(need_int(x, "word entry"), "word entry"));
      d.words(k).push_back(std::move(word));
    }
  }
  return d;
}

/// Parse and validate: ParseError or ValidationError on failure.
inline HeegaardDiagram parse_validate(const std::string& text) {
  return HeegaardDiagram::build(parse_diagram_data(text));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json to_json(const DiagramData& d) {
  Json j;
  j["genus"] = d.genus;
  Json pts = Json::array();
  for (auto& p : d.points) pts.push_back({{"id", p.id}, {"alpha", p.alpha + 1}, {"beta", p.beta + 1}, {"sign", p.sign}});
  j["points"] = pts;
  j["alpha_words"] = d.alpha_words;
  j["beta_words"] = d.beta_words;
  return j;
}

inline Json to_json(const HeegaardDiagram& h) { return to_json(h.data()); }

}  // namespace heegaard
