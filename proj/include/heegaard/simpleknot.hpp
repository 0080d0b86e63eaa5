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

// Homology classes of simple knots. A pair of basepoints (z1, z2) in faces
// f1, f2 determines a knot; its class in H_1 = coker M is the vector of
// signed alpha crossings along a path from f1 to f2 that avoids the betas.
// Stepping across an arc of alpha_i from its right side to its left side
// adds e_i.

#pragma once

#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "heegaard/core.hpp"
#include "heegaard/diagram.hpp"
#include "heegaard/intmat.hpp"

namespace heegaard {

using IntVector = std::vector<Integer>;

/// An element of Z^g / (column lattice of M). The key is a canonical form:
/// equal classes have equal keys.
struct QuotientClass {
  IntVector representative;
  IntVector key;

  bool operator==(const QuotientClass& o) const { return key == o.key; }
  bool operator<(const QuotientClass& o) const { return key < o.key; }
};

class HomologyQuotient {
 public:
  explicit HomologyQuotient(const SignedMatrix& m) : m_(m), snf_(smith_decompose(m)) {}

  int rank() const { return m_.size(); }
  const SignedMatrix& matrix() const { return m_; }
  const std::vector<Integer>& invariants() const { return snf_.invariants; }

  /// |coker M|, or 0 when it is infinite.
  Integer order() const {
    Integer o = 1;
    for (auto& d : snf_.invariants) o *= d;
    return heegaard::abs(o);
  }

  /// (U x)_i mod d_i; coordinates with d_i = 0 are kept as they are.
  IntVector key(const IntVector& x) const {
    const int n = rank();
    if (static_cast<int>(x.size()) != n) throw SizeMismatch("vector length differs from genus");
    IntVector y(n);
    for (int i = 0; i < n; ++i) {
      Integer s = 0;
      for (int j = 0; j < n; ++j) s += snf_.left(i, j) * x[j];
      const Integer d = heegaard::abs(snf_.invariants[i]);
      if (d != 0) {
        s %= d;
        if (s < 0) s += d;
      }
      y[i] = s;
    }
    return y;
  }

  QuotientClass make(IntVector x) const {
    QuotientClass c;
    c.key = key(x);
    c.representative = std::move(x);
    return c;
  }

  bool is_zero(const IntVector& x) const { return key(x) == IntVector(rank(), 0); }

 private:
  SignedMatrix m_;
  SmithForm snf_;
};

/// Dual graph on faces whose edges cross alpha arcs. For a complex the
/// faces are flattened component by component and each merge joins two
/// faces with a zero-weight edge.
struct AlphaDualGraph {
  struct Edge {
    int from;
    int to;
    int curve;  // -1 for a merge
    int weight;
  };
  int genus = 0;
  int faces = 0;
  std::vector<std::vector<Edge>> adj;

  void add(int right, int left, int curve) {
    adj[right].push_back({right, left, curve, +1});
    adj[left].push_back({left, right, curve, -1});
  }
};

inline AlphaDualGraph alpha_dual_graph(const DiagramComplex& c) {
  AlphaDualGraph G;
  G.genus = c.genus();
  G.faces = c.flat_face_count();
  G.adj.assign(G.faces, {});
  const auto& parts = c.components();
  for (size_t k = 0; k < parts.size(); ++k) {
    const int fo = c.face_offset(static_cast<int>(k)), co = c.curve_offset(static_cast<int>(k));
    const auto& H = parts[k];
    for (int x = 0; x < H.point_count(); ++x)
      G.add(fo + H.face_right(CurveKind::Alpha, x), fo + H.face_left(CurveKind::Alpha, x), co + H.points()[x].alpha);
  }
  for (auto& [a, b] : c.merges()) {
    const int u = c.face_offset(a.component) + a.face, v = c.face_offset(b.component) + b.face;
    G.adj[u].push_back({u, v, -1, 0});
    G.adj[v].push_back({v, u, -1, 0});
  }
  return G;
}

inline AlphaDualGraph alpha_dual_graph(const HeegaardDiagram& H) { return alpha_dual_graph(DiagramComplex(H)); }

/// Crossing vectors from a root face to every face, along breadth-first
/// paths. Faces not reachable from the root stay empty.
inline std::vector<std::optional<IntVector>> crossing_potentials(const AlphaDualGraph& G, int root,
                                                                 bool reverse_order = false) {
  std::vector<std::optional<IntVector>> pot(G.faces);
  pot[root] = IntVector(G.genus, 0);
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    auto visit = [&](const AlphaDualGraph::Edge& e) {
      if (pot[e.to]) return;
      IntVector v = *pot[f];
      if (e.curve >= 0) v[e.curve] += e.weight;
      pot[e.to] = std::move(v);
      queue.push_back(e.to);
    };
    if (reverse_order)
      for (auto it = G.adj[f].rbegin(); it != G.adj[f].rend(); ++it) visit(*it);
    else
      for (auto& e : G.adj[f]) visit(e);
  }
  return pot;
}

/// Every closed path of the dual graph has a crossing vector in the column
/// lattice. This is what makes face-pair classes well defined.
inline bool alpha_cycles_in_lattice(const DiagramComplex& c) {
  auto G = alpha_dual_graph(c);
  HomologyQuotient q(c.intersection_matrix());
  std::vector<char> done(G.faces, 0);
  for (int r = 0; r < G.faces; ++r) {
    if (done[r]) continue;
    auto pot = crossing_potentials(G, r);
    for (int f = 0; f < G.faces; ++f) {
      if (!pot[f]) continue;
      done[f] = 1;
      for (auto& e : G.adj[f]) {
        IntVector v = *pot[f];
        if (e.curve >= 0) v[e.curve] += e.weight;
        for (int i = 0; i < G.genus; ++i) v[i] -= (*pot[e.to])[i];
        if (!q.is_zero(v)) return false;
      }
    }
  }
  return true;
}

inline bool alpha_cycles_in_lattice(const HeegaardDiagram& H) { return alpha_cycles_in_lattice(DiagramComplex(H)); }

namespace detail {

inline int flat_face(const DiagramComplex& c, FaceRef f) {
  if (f.component < 0 || f.component >= static_cast<int>(c.components().size()) || f.face < 0 ||
      f.face >= c.components()[f.component].face_count())
    throw PreconditionViolated("face reference out of range");
  return c.face_offset(f.component) + f.face;
}

}  // namespace detail

inline QuotientClass class_of_face_pair(const DiagramComplex& c, FaceRef f1, FaceRef f2) {
  const int a = detail::flat_face(c, f1), b = detail::flat_face(c, f2);
  auto pot = crossing_potentials(alpha_dual_graph(c), a);
  if (!pot[b]) throw NoAlphaPath("faces are not joined by a path avoiding the beta curves");
  return HomologyQuotient(c.intersection_matrix()).make(*pot[b]);
}

inline QuotientClass class_of_face_pair(const HeegaardDiagram& H, int f1, int f2) {
  return class_of_face_pair(DiagramComplex(H), {0, f1}, {0, f2});
}

/// Classes of all ordered face pairs. InfiniteHomology when det M = 0.
inline std::set<QuotientClass> realized_classes(const DiagramComplex& c) {
  HomologyQuotient q(c.intersection_matrix());
  if (q.order() == 0) throw InfiniteHomology("det M = 0: the homology is infinite");
  auto G = alpha_dual_graph(c);
  std::set<QuotientClass> out;
  for (int r = 0; r < G.faces; ++r) {
    auto pot = crossing_potentials(G, r);
    for (int f = 0; f < G.faces; ++f)
      if (pot[f]) out.insert(q.make(*pot[f]));
  }
  return out;
}

inline std::set<QuotientClass> realized_classes(const HeegaardDiagram& H) {
  return realized_classes(DiagramComplex(H));
}

namespace detail {

inline HomologyQuotient genus2_quotient(const HeegaardDiagram& H) {
  if (H.genus() != 2) throw PreconditionViolated("only genus-2 diagrams are supported");
  HomologyQuotient q(H.intersection_matrix());
  if (q.order() == 0) throw InfiniteHomology("det M = 0: the homology is infinite");
  return q;
}

}  // namespace detail

/// First face pair, in face order, whose class is x. Genus 2 only.
inline std::pair<int, int> find_face_pair_for_class(const HeegaardDiagram& H, const IntVector& x) {
  auto q = detail::genus2_quotient(H);
  const IntVector want = q.key(x);
  auto G = alpha_dual_graph(H);
  for (int f1 = 0; f1 < G.faces; ++f1) {
    auto pot = crossing_potentials(G, f1);
    for (int f2 = 0; f2 < G.faces; ++f2)
      if (pot[f2] && q.key(*pot[f2]) == want) return {f1, f2};
  }
  throw NotFound("no face pair realizes the class");
}

/// Prefix sums of signed alpha crossings along each beta word; the
/// differences S_1 - S_2 must meet every class of coker M.
inline bool prefix_coverage_check(const HeegaardDiagram& H) {
  auto q = detail::genus2_quotient(H);
  std::array<std::vector<IntVector>, 2> S;
  for (int j = 0; j < 2; ++j) {
    IntVector s(2, 0);
    for (int id : H.beta_words()[j]) {
      S[j].push_back(s);
      const Point& p = H.points()[H.index_of(id)];
      s[p.alpha] += p.sign;
    }
  }
  std::set<IntVector> keys;
  for (auto& a : S[0])
    for (auto& b : S[1]) keys.insert(q.key({a[0] - b[0], a[1] - b[1]}));
  return Integer(static_cast<int64_t>(keys.size())) == q.order();
}

}  // namespace heegaard
