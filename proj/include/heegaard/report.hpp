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

// Reports for diagrams and templates, as ordered JSON or a plain table.

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heegaard/bigraph.hpp"
#include "heegaard/diagram.hpp"
#include "heegaard/genus2_template.hpp"
#include "heegaard/intmat.hpp"
#include "heegaard/io.hpp"

namespace heegaard {

struct StandardFormSummary {
  int rp3 = 0;
  int destabilized = 0;
  std::vector<int> residual_genera;
  std::vector<Integer> residual_generators;
};

struct AnalysisReport {
  int genus = 0;
  int point_count = 0;
  SignedMatrix matrix;
  Integer det;
  Integer generator_count;
  bool strong = false;
  bool coherent = false;
  bool one_extendible = false;
  std::optional<ReductionWitness> reducible_witness;
  std::vector<Integer> homology_invariants;  // Smith invariants, 1s included
  int face_count = 0;
  std::vector<WaveRecord> waves;
  std::vector<WaveRecord> antiwaves;
  std::optional<StandardFormSummary> standard_form;  // absent without generators
};

inline AnalysisReport analyze(const HeegaardDiagram& H, const Limits& limits = {}) {
  AnalysisReport r;
  r.genus = H.genus();
  r.point_count = H.point_count();
  auto G = H.intersection_graph();
  r.matrix = G.signed_matrix();
  r.det = det(r.matrix);
  r.generator_count = count_matchings(G, limits.permanent_size);
  r.strong = r.generator_count > 0 && heegaard::abs(r.det) == r.generator_count;
  r.coherent = is_coherent(G);
  r.homology_invariants = smith_invariants(r.matrix);
  r.face_count = H.face_count();
  auto w = detect_waves(H);
  r.waves = std::move(w.waves);
  r.antiwaves = std::move(w.antiwaves);
  if (r.generator_count > 0) {
    r.one_extendible = is_one_extendible(G);
    r.reducible_witness = reducibility_witness(G, limits.witness_genus);
    auto sf = standard_form(G, limits);
    StandardFormSummary s;
    s.rp3 = sf.rp3;
    s.destabilized = sf.destabilized;
    for (auto& c : sf.components) {
      s.residual_genera.push_back(c.genus());
      s.residual_generators.push_back(count_matchings(c, limits.permanent_size));
    }
    r.standard_form = std::move(s);
  }
  return r;
}

namespace detail {

inline Json one_based(const std::vector<int>& xs) {
  Json out = Json::array();
  for (int x : xs) out.push_back(x + 1);
  return out;
}

inline Json witness_json(const std::optional<ReductionWitness>& w) {
  if (!w) return nullptr;
  return {{"alphas", one_based(w->alphas)}, {"betas", one_based(w->betas)}};
}

inline Json wave_json(const WaveRecord& w) {
  return {{"face", w.face + 1},
          {"curve", std::string(w.kind == CurveKind::Alpha ? "a" : "b") + std::to_string(w.curve + 1)},
          {"positions", {w.first_position + 1, w.second_position + 1}},
          {"sides", {w.first_left ? "left" : "right", w.second_left ? "left" : "right"}}};
}

inline std::string vec_str(const std::vector<Integer>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

inline std::string matrix_str(const SignedMatrix& m) {
  std::string s = "[";
  for (int i = 0; i < m.size(); ++i) {
    std::vector<Integer> row;
    for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    s += (i ? ", " : "") + vec_str(row);
  }
  return s + "]";
}

inline std::string witness_str(const std::optional<ReductionWitness>& w) {
  if (!w) return "none";
  std::string s = "{";
  for (size_t i = 0; i < w->alphas.size(); ++i) s += (i ? "," : "") + std::string("a") + std::to_string(w->alphas[i] + 1);
  s += "} -> {";
  for (size_t i = 0; i < w->betas.size(); ++i) s += (i ? "," : "") + std::string("b") + std::to_string(w->betas[i] + 1);
  return s + "}";
}

inline std::string table(const std::vector<std::pair<std::string, std::string>>& rows) {
  size_t width = 0;
  for (auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream out;
  for (auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return out.str();
}

// Cyclic summands as Z or Z/n; the trivial group is 0.
inline std::string group_str(const std::vector<Integer>& factors) {
  std::string s;
  for (auto& f : factors) {
    if (f == 1) continue;
    s += (s.empty() ? "" : " + ") + (f == 0 ? std::string("Z") : "Z/" + f.str());
  }
  return s.empty() ? "0" : s;
}

inline std::vector<Integer> nontrivial(const std::vector<Integer>& xs) {
  std::vector<Integer> out;
  for (auto& x : xs)
    if (x != 1) out.push_back(x);
  return out;
}

}  // namespace detail

inline Json to_json(const AnalysisReport& r) {
  Json j;
  j["genus"] = r.genus;
  j["point_count"] = r.point_count;
  j["matrix"] = to_json(r.matrix);
  j["det"] = to_json(r.det);
  j["generator_count"] = to_json(r.generator_count);
  j["strong"] = r.strong;
  j["coherent"] = r.coherent;
  j["one_extendible"] = r.one_extendible;
  j["reducible_witness"] = detail::witness_json(r.reducible_witness);
  j["homology_invariants"] = to_json(r.homology_invariants);
  j["homology"] = to_json(detail::nontrivial(r.homology_invariants));
  j["face_count"] = r.face_count;
  Json waves = Json::array(), anti = Json::array();
  for (auto& w : r.waves) waves.push_back(detail::wave_json(w));
  for (auto& w : r.antiwaves) anti.push_back(detail::wave_json(w));
  j["waves"] = waves;
  j["antiwaves"] = anti;
  if (r.standard_form) {
    Json residual = Json::array();
    for (size_t k = 0; k < r.standard_form->residual_genera.size(); ++k)
      residual.push_back({{"genus", r.standard_form->residual_genera[k]},
                          {"generators", to_json(r.standard_form->residual_generators[k])}});
    j["standard_form"] = {{"rp3_summands", r.standard_form->rp3},
                          {"destabilized", r.standard_form->destabilized},
                          {"residual", residual}};
  } else {
    j["standard_form"] = nullptr;
  }
  return j;
}

inline std::string to_text(const AnalysisReport& r) {
  std::string sf = "n/a (no generators)";
  if (r.standard_form) {
    sf = std::to_string(r.standard_form->rp3) + " RP3, " + std::to_string(r.standard_form->destabilized) +
         " destabilized, residual genera [";
    for (size_t k = 0; k < r.standard_form->residual_genera.size(); ++k)
      sf += (k ? ", " : "") + std::to_string(r.standard_form->residual_genera[k]);
    sf += "]";
  }
  return detail::table({{"genus", std::to_string(r.genus)},
                        {"points", std::to_string(r.point_count)},
                        {"faces", std::to_string(r.face_count)},
                        {"matrix", detail::matrix_str(r.matrix)},
                        {"det", r.det.str()},
                        {"generators", r.generator_count.str()},
                        {"strong", r.strong ? "yes" : "no"},
                        {"coherent", r.coherent ? "yes" : "no"},
                        {"1-extendible", r.one_extendible ? "yes" : "no"},
                        {"reducible", detail::witness_str(r.reducible_witness)},
                        {"homology", detail::group_str(r.homology_invariants)},
                        {"waves", std::to_string(r.waves.size())},
                        {"antiwaves", std::to_string(r.antiwaves.size())},
                        {"standard form", sf}});
}

inline Json to_json(const TemplateReport& r) {
  Json j;
  j["slopes"] = {r.params.a[0].str(), r.params.a[1].str(), r.params.a[2].str(), r.params.a[3].str()};
  j["matrix"] = to_json(r.matrix);
  j["det"] = to_json(r.det);
  j["generator_count"] = to_json(r.generator_count);
  j["strong"] = r.strong;
  j["alternating"] = r.alternating;
  j["smith_invariants"] = to_json(r.smith);
  j["homology"] = to_json(r.homology);
  j["link_determinant"] = to_json(r.link_determinant);
  j["reducible_witness"] = detail::witness_json(r.reducible);
  j["diagram"] = r.diagram_kind;
  return j;
}

inline std::string to_text(const TemplateReport& r) {
  return detail::table({{"template", "H" + r.params.str()},
                        {"matrix", detail::matrix_str(r.matrix)},
                        {"det", r.det.str()},
                        {"generators", r.generator_count.str()},
                        {"strong", r.strong ? "yes" : "no"},
                        {"alternating", r.alternating ? "yes" : "no"},
                        {"homology", detail::group_str(r.homology)},
                        {"link determinant", r.link_determinant.str()},
                        {"reducible", detail::witness_str(r.reducible)},
                        {"diagram", r.diagram_kind}});
}

}  // namespace heegaard
