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

// The genus-2 family H(a1, a2, a3, a4). alpha1 and beta1 are slope lines
// of slopes a1, a2 on one flat torus, alpha2 and beta2 slope lines of
// slopes a3, a4 (with p and q exchanged) on a second torus. The two tori
// are plumbed: the vertical band of alpha1 crosses the vertical band of
// beta2, and the vertical band of beta1 crosses that of alpha2. Each curve
// is drawn as parallel strands in a horizontal and a vertical band and the
// grid of strands is smoothed along the curve's direction; reading the
// strands in order gives the cyclic words.

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "heegaard/bigraph.hpp"
#include "heegaard/core.hpp"
#include "heegaard/diagram.hpp"
#include "heegaard/intmat.hpp"

namespace heegaard {

/// Reduced p/q with q >= 0; 1/0 is the only slope with q = 0.
struct Slope {
  int64_t p = 1;
  int64_t q = 0;

  static Slope make(int64_t p, int64_t q) {
    if (p == 0 && q == 0) throw ParseError("0/0 is not a slope");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    if (q == 0) return {1, 0};
    int64_t g = std::gcd(p < 0 ? -p : p, q);
    return {p / g, q / g};
  }

  bool operator==(const Slope&) const = default;

  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
};

/// Accepts "p/q" or "p".
inline Slope parse_slope(const std::string& text) {
  auto number = [&](const std::string& s) -> int64_t {
    if (s.empty()) throw ParseError("unparsable slope \"" + text + "\"");
    size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ParseError("unparsable slope \"" + text + "\"");
    }
    if (used != s.size() || v > 1000000 || v < -1000000) throw ParseError("unparsable slope \"" + text + "\"");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Slope::make(number(text), 1);
  return Slope::make(number(text.substr(0, slash)), number(text.substr(slash + 1)));
}

struct TemplateParams {
  std::array<Slope, 4> a;

  std::string str() const {
    return "(" + a[0].str() + ", " + a[1].str() + ", " + a[2].str() + ", " + a[3].str() + ")";
  }
};

inline TemplateParams make_template(Slope a1, Slope a2, Slope a3, Slope a4) { return {{a1, a2, a3, a4}}; }

inline SignedMatrix template_matrix(const TemplateParams& t) {
  const Integer p1 = t.a[0].p, q1 = t.a[0].q, p2 = t.a[1].p, q2 = t.a[1].q;
  const Integer p3 = t.a[2].p, q3 = t.a[2].q, p4 = t.a[3].p, q4 = t.a[3].q;
  SignedMatrix m(2);
  m(0, 0) = -p1 * q2 - q1 * p2;
  m(0, 1) = -q1 * p4;
  m(1, 0) = -q2 * p3;
  m(1, 1) = p3 * q4 + q3 * p4;
  return m;
}

struct AnnulusPairing {
  int64_t algebraic;
  int64_t geometric;
  bool minimal;
};

/// Two lines of slopes p1/q1 and p2/q2 on a torus meet p1q2 - q1p2 times
/// algebraically and |p1q2| + |q1p2| times as drawn; the drawing is minimal
/// unless both products have the same strict sign.
inline AnnulusPairing annulus_pairing(int64_t p1, int64_t q1, int64_t p2, int64_t q2) {
  const int64_t x = p1 * q2, y = q1 * p2;
  return {x - y, (x < 0 ? -x : x) + (y < 0 ? -y : y), !((x > 0 && y > 0) || (x < 0 && y < 0))};
}

namespace detail {

inline int sgn(int64_t x) { return (x > 0) - (x < 0); }

// Crossing families, named by the strands that meet.
enum Family { A1hB1v, A1vB1h, X6, X3, A2vB2h, A2hB2v };
using Key = std::tuple<int, int, int>;  // (family, i, j)
using Slot = std::pair<int, int>;       // (0 horizontal / 1 vertical, strand)

/// Smoothing of an a x b grid: which strand each strand continues into.
inline std::map<Slot, Slot> resolve(int a, int b, int dx, int dy) {
  if (b == 0) dy = 1;
  if (a == 0) dx = 1;
  std::vector<int> hs(a), vs(b);
  std::iota(hs.begin(), hs.end(), 0);
  std::iota(vs.begin(), vs.end(), 0);
  if (dy > 0) std::reverse(hs.begin(), hs.end());
  if (dx < 0) std::reverse(vs.begin(), vs.end());
  std::vector<Slot> entries, exits;
  for (int s : hs) entries.push_back({0, s});
  for (int s : vs) entries.push_back({1, s});
  for (int s : vs) exits.push_back({1, s});
  for (int s : hs) exits.push_back({0, s});
  std::map<Slot, Slot> out;
  for (size_t k = 0; k < entries.size(); ++k) out[entries[k]] = exits[k];
  return out;
}

/// Crossings met by a vertical strand leaving its own square: the half band
/// of the plumbing and the other curve's horizontal band, in travel order.
inline std::vector<Key> vertical_events(bool own_above_other, int dy, const std::vector<Key>& other,
                                        const std::vector<Key>& half) {
  std::vector<Key> out;
  auto append = [&](const std::vector<Key>& v, bool rev) {
    if (rev)
      out.insert(out.end(), v.rbegin(), v.rend());
    else
      out.insert(out.end(), v.begin(), v.end());
  };
  if (dy > 0) {
    append(own_above_other ? half : other, false);
    append(own_above_other ? other : half, false);
  } else {
    append(own_above_other ? other : half, true);
    append(own_above_other ? half : other, true);
  }
  return out;
}

template <class H, class V>
std::vector<Key> traverse(int a, int b, int dx, int dy, H&& hseg, V&& vseg) {
  if (a + b == 0) return {};
  auto next = resolve(a, b, dx, dy);
  const Slot start = a > 0 ? Slot{0, 0} : Slot{1, 0};
  std::vector<Key> seq;
  Slot cur = start;
  int steps = 0;
  do {
    auto seg = cur.first == 0 ? hseg(cur.second) : vseg(cur.second);
    seq.insert(seq.end(), seg.begin(), seg.end());
    cur = next.at(cur);
    ++steps;
  } while (cur != start);
  if (steps != a + b) throw std::logic_error("template strands do not close into one curve");
  return seq;
}

}  // namespace detail

/// Word data of H(a1, a2, a3, a4). Always defined; it is cellular exactly
/// when template_diagram succeeds.
inline DiagramData template_words(const TemplateParams& t) {
  using namespace detail;
  const int64_t p1 = t.a[0].p, q1 = t.a[0].q, p2 = t.a[1].p, q2 = t.a[1].q;
  const int64_t p3 = t.a[2].p, q3 = t.a[2].q, p4 = t.a[3].p, q4 = t.a[3].q;
  auto n = [](int64_t x) { return static_cast<int>(x < 0 ? -x : x); };
  const int a1h = n(p1), a1v = n(q1), b1h = n(p2), b1v = n(q2);
  const int a2h = n(q3), a2v = n(p3), b2h = n(q4), b2v = n(p4);
  constexpr bool kAlphaAbove = true;  // stacking of the two bands; either works

  auto row = [](int fam, int fixed, int count, bool fixed_first, bool forward) {
    std::vector<Key> ev;
    for (int k = 0; k < count; ++k) ev.push_back(fixed_first ? Key{fam, fixed, k} : Key{fam, k, fixed});
    if (!forward) std::reverse(ev.begin(), ev.end());
    return ev;
  };

  int dx = sgn(p1), dy = -sgn(q1);
  auto w_a1 = traverse(
      a1h, a1v, dx, dy, [&](int h) { return row(A1hB1v, h, b1v, true, dx > 0); },
      [&](int i) {
        return vertical_events(kAlphaAbove, dy, row(A1vB1h, i, b1h, true, true), row(X6, i, b2v, true, true));
      });
  dx = sgn(p2);
  dy = sgn(q2);
  auto w_b1 = traverse(
      b1h, b1v, dx, dy, [&](int j) { return row(A1vB1h, j, a1v, false, dx > 0); },
      [&](int j) {
        std::vector<Key> half;
        for (int k = 0; k < a2v; ++k) half.push_back({X3, a2v - 1 - k, j});
        return vertical_events(!kAlphaAbove, dy, row(A1hB1v, j, a1h, false, true), half);
      });
  dx = -sgn(q3);
  dy = -sgn(p3);
  auto w_a2 = traverse(
      a2h, a2v, dx, dy, [&](int h) { return row(A2hB2v, h, b2v, true, dx > 0); },
      [&](int k) {
        return vertical_events(kAlphaAbove, dy, row(A2vB2h, k, b2h, true, true), row(X3, k, b1v, true, true));
      });
  dx = sgn(q4);
  dy = -sgn(p4);
  auto w_b2 = traverse(
      b2h, b2v, dx, dy, [&](int h) { return row(A2vB2h, h, a2v, false, dx > 0); },
      [&](int m) {
        std::vector<Key> half;
        for (int i = 0; i < a1v; ++i) half.push_back({X6, a1v - 1 - i, m});
        return vertical_events(!kAlphaAbove, dy, row(A2hB2v, m, a2h, false, true), half);
      });

  const std::array<int, 6> family_sign{sgn(p1) * sgn(q2),  sgn(q1) * sgn(p2), sgn(q1) * sgn(p4),
                                       -sgn(p3) * sgn(q2), sgn(p3) * sgn(q4), sgn(q3) * sgn(p4)};
  std::map<Key, int> id;
  for (auto* w : {&w_a1, &w_a2})
    for (auto& k : *w) id.emplace(k, static_cast<int>(id.size()) + 1);

  DiagramData d;
  d.genus = 2;
  std::map<int, Point> pts;
  // alpha1 is traversed against its drawn direction, which flips its signs.
  for (auto& k : w_a1) pts[id.at(k)] = {id.at(k), 0, -1, -family_sign[std::get<0>(k)]};
  for (auto& k : w_a2) pts[id.at(k)] = {id.at(k), 1, -1, family_sign[std::get<0>(k)]};
  for (auto& k : w_b1) pts.at(id.at(k)).beta = 0;
  for (auto& k : w_b2) pts.at(id.at(k)).beta = 1;
  for (auto& [x, p] : pts) {
    if (p.beta < 0) throw std::logic_error("template crossing missing from the beta curves");
    d.points.push_back(p);
  }
  auto ids = [&](const std::vector<Key>& w) {
    std::vector<int> out;
    for (auto& k : w) out.push_back(id.at(k));
    return out;
  };
  auto r1 = ids(w_a1);
  std::reverse(r1.begin(), r1.end());
  d.alpha_words = {r1, ids(w_a2)};
  d.beta_words = {ids(w_b1), ids(w_b2)};
  return d;
}

inline IntersectionGraph template_graph(const TemplateParams& t) { return intersection_graph(template_words(t)); }

/// The cellular diagram, or DegenerateTemplate when a 1/0 or 0/1 slope
/// leaves a curve empty or a region that is not a disk.
inline HeegaardDiagram template_diagram(const TemplateParams& t) {
  DiagramData d = template_words(t);
  for (int kind = 0; kind < 2; ++kind)
    for (auto& w : d.words(static_cast<CurveKind>(kind)))
      if (w.empty()) throw DegenerateTemplate("template " + t.str() + " has a curve with no intersections");
  try {
    return HeegaardDiagram::build(std::move(d));
  } catch (const ValidationError& e) {
    throw DegenerateTemplate("template " + t.str() + " is not cellular: " + e.what());
  }
}

/// Template as a complex: the cellular diagram when there is one, otherwise
/// the connected sum of its two genus-1 halves when they do not interact.
inline DiagramComplex template_complex(const TemplateParams& t) {
  try {
    return DiagramComplex(template_diagram(t));
  } catch (const DegenerateTemplate&) {
    DiagramData d = template_words(t);
    bool split = true;
    for (auto& p : d.points) split = split && p.alpha == p.beta;
    if (!split) throw;
    auto half = [&](int c) {
      DiagramData h;
      h.genus = 1;
      for (auto& p : d.points)
        if (p.alpha == c) h.points.push_back({p.id, 0, 0, p.sign});
      h.alpha_words = {d.alpha_words[c]};
      h.beta_words = {d.beta_words[c]};
      try {
        return HeegaardDiagram::build(std::move(h));
      } catch (const ValidationError& e) {
        throw DegenerateTemplate("template " + t.str() + " half " + std::to_string(c + 1) + " is degenerate: " +
                                 e.what());
      }
    };
    return connect_sum(half(0), 0, half(1), 0);
  }
}

/// Alternating: all four slopes share a sign, 0/1 and 1/0 counting as both.
inline bool template_alternating(const TemplateParams& t) {
  bool pos = true, neg = true;
  for (auto& s : t.a) {
    if (s.p == 0 || s.q == 0) continue;
    pos = pos && s.p > 0;
    neg = neg && s.p < 0;
  }
  return pos || neg;
}

struct TemplateReport {
  TemplateParams params;
  SignedMatrix matrix;
  Integer det;
  Integer generator_count;
  bool strong = false;
  bool alternating = false;
  std::vector<Integer> smith;
  std::vector<Integer> homology;  // invariant factors other than 1
  Integer link_determinant;
  std::optional<ReductionWitness> reducible;
  std::string diagram_kind;  // "cellular", "connected-sum" or "degenerate"
};

inline TemplateReport template_report(const TemplateParams& t) {
  TemplateReport r;
  r.params = t;
  r.matrix = template_matrix(t);
  r.det = det(r.matrix);
  auto G = template_graph(t);
  r.generator_count = count_matchings(G);
  r.strong = r.generator_count > 0 && heegaard::abs(r.det) == r.generator_count;
  r.alternating = template_alternating(t);
  r.smith = smith_invariants(r.matrix);
  r.homology = homology_factors(r.matrix);
  r.link_determinant = heegaard::abs(r.det);
  if (r.generator_count > 0) r.reducible = reducibility_witness(G);
  try {
    auto c = template_complex(t);
    r.diagram_kind = c.components().size() == 1 ? "cellular" : "connected-sum";
  } catch (const DegenerateTemplate&) {
    r.diagram_kind = "degenerate";
  }
  return r;
}

}  // namespace heegaard
