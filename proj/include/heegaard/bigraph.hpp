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

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heegaard/core.hpp"
#include "heegaard/intmat.hpp"

namespace heegaard {

enum class Side { A, B };

/// A vertex of the bipartite graph: a_i (alpha curve) or b_j (beta curve).
/// Indices are 0-based; user-facing text prints them 1-based.
struct Vertex {
  Side side;
  int index;
};

/// One intersection point. The id is the position in the edge list.
struct GraphEdge {
  int a;
  int b;
  int sign;
  int id;
};

struct EdgeSpec {
  int a;
  int b;
  int sign;
};

/// Signed bipartite multigraph with parts A = {a_0..a_{g-1}} and
/// B = {b_0..b_{g-1}}. Stored as an edge list so every intersection point
/// keeps its identity.
class IntersectionGraph {
 public:
  IntersectionGraph() = default;
  IntersectionGraph(int g, const std::vector<EdgeSpec>& edges) : g_(g) {
    if (g < 0) throw PreconditionViolated("graph genus must be nonnegative");
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
      if (e.a < 0 || e.a >= g || e.b < 0 || e.b >= g)
        throw PreconditionViolated("edge endpoint out of range");
      if (e.sign != 1 && e.sign != -1) throw PreconditionViolated("edge sign must be +1 or -1");
      edges_.push_back({e.a, e.b, e.sign, static_cast<int>(edges_.size())});
    }
  }

  /// Graph from a multiplicity matrix; every edge gets the given sign.
  static IntersectionGraph from_multiplicities(const SmallMatrix& m, int sign = 1) {
    std::vector<EdgeSpec> es;
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j)
        for (int64_t k = 0; k < m(i, j); ++k) es.push_back({i, j, sign});
    return IntersectionGraph(m.size(), es);
  }

  int genus() const { return g_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  std::vector<EdgeSpec> specs() const {
    std::vector<EdgeSpec> out;
    for (auto& e : edges_) out.push_back({e.a, e.b, e.sign});
    return out;
  }

  SmallMatrix multiplicity_matrix() const {
    SmallMatrix m(g_);
    for (auto& e : edges_) m(e.a, e.b) += 1;
    return m;
  }

  /// m_ij = sum of the signs of the (a_i, b_j) edges.
  SignedMatrix signed_matrix() const {
    SignedMatrix m(g_);
    for (auto& e : edges_) m(e.a, e.b) += e.sign;
    return m;
  }

  int degree(Vertex v) const {
    int d = 0;
    for (auto& e : edges_) d += (v.side == Side::A ? e.a : e.b) == v.index;
    return d;
  }

  int min_degree() const {
    int best = g_ == 0 ? 0 : edge_count();
    for (int i = 0; i < g_; ++i)
      best = std::min({best, degree({Side::A, i}), degree({Side::B, i})});
    return best;
  }

  /// Swaps the two parts. Generator signs are unchanged (sgn of the inverse
  /// permutation equals sgn of the permutation).
  IntersectionGraph transpose() const {
    std::vector<EdgeSpec> es;
    for (auto& e : edges_) es.push_back({e.b, e.a, e.sign});
    return IntersectionGraph(g_, es);
  }

  /// Subgraph on the listed vertices, relabeled in list order; edges keep
  /// their relative order.
  IntersectionGraph induced(const std::vector<int>& alphas, const std::vector<int>& betas) const {
    if (alphas.size() != betas.size()) throw SizeMismatch("induced subgraph parts differ in size");
    std::vector<int> ra(g_, -1), rb(g_, -1);
    for (size_t k = 0; k < alphas.size(); ++k) ra.at(alphas[k]) = static_cast<int>(k);
    for (size_t k = 0; k < betas.size(); ++k) rb.at(betas[k]) = static_cast<int>(k);
    std::vector<EdgeSpec> es;
    for (auto& e : edges_)
      if (ra[e.a] >= 0 && rb[e.b] >= 0) es.push_back({ra[e.a], rb[e.b], e.sign});
    return IntersectionGraph(static_cast<int>(alphas.size()), es);
  }

 private:
  int g_ = 0;
  std::vector<GraphEdge> edges_;
};

namespace detail {

/// Kuhn's augmenting-path matching on the simple support graph, with some
/// vertices removed. Returns true iff the remaining graph has a perfect
/// matching.
inline bool perfect_matching_exists(const std::vector<std::vector<char>>& adj,
                                    const std::vector<char>& skip_a,
                                    const std::vector<char>& skip_b) {
  const int g = static_cast<int>(adj.size());
  std::vector<int> match_b(g, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int a) -> bool {
    for (int b = 0; b < g; ++b) {
      if (!adj[a][b] || skip_b[b] || seen[b]) continue;
      seen[b] = 1;
      if (match_b[b] < 0 || self(self, match_b[b])) {
        match_b[b] = a;
        return true;
      }
    }
    return false;
  };
  int need = 0;
  for (int a = 0; a < g; ++a) {
    if (skip_a[a]) continue;
    ++need;
    seen.assign(g, 0);
    if (!augment(augment, a)) return false;
  }
  int free_b = 0;
  for (int b = 0; b < g; ++b) free_b += !skip_b[b];
  return free_b == need;
}

inline std::vector<std::vector<char>> support(const IntersectionGraph& G) {
  std::vector<std::vector<char>> adj(G.genus(), std::vector<char>(G.genus(), 0));
  for (auto& e : G.edges()) adj[e.a][e.b] = 1;
  return adj;
}

}  // namespace detail

inline bool has_perfect_matching(const IntersectionGraph& G) {
  std::vector<char> none(G.genus(), 0);
  return detail::perfect_matching_exists(detail::support(G), none, none);
}

/// Number of perfect matchings: the permanent of the multiplicity matrix.
inline Integer count_matchings(const IntersectionGraph& G, int limit = Limits{}.permanent_size) {
  return permanent(G.multiplicity_matrix().cast<Integer>(), limit);
}

/// A perfect matching: edge_of[i] is the edge used at a_i, sigma[i] its
/// b-index, and sign = sgn(sigma) * product of edge signs.
struct Generator {
  std::vector<int> edge_of;
  std::vector<int> sigma;
  int sign = 1;

  std::vector<int> sorted_edges() const {
    auto s = edge_of;
    std::sort(s.begin(), s.end());
    return s;
  }
};

inline int permutation_sign(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

/// All generators, ordered lexicographically by their sorted edge ids.
inline std::vector<Generator> enumerate_generators(const IntersectionGraph& G) {
  const int g = G.genus();
  std::vector<std::vector<int>> at(g);
  for (auto& e : G.edges()) at[e.a].push_back(e.id);
  std::vector<Generator> out;
  std::vector<int> edge_of(g, -1);
  std::vector<char> used_b(g, 0);

  auto rec = [&](auto&& self, int matched) -> void {
    if (matched == g) {
      Generator gen;
      gen.edge_of = edge_of;
      gen.sigma.resize(g);
      int s = 1;
      for (int i = 0; i < g; ++i) {
        const auto& e = G.edges()[edge_of[i]];
        gen.sigma[i] = e.b;
        s *= e.sign;
      }
      gen.sign = s * permutation_sign(gen.sigma);
      out.push_back(std::move(gen));
      return;
    }
    // Pivot: the unmatched a-vertex with the fewest usable edges.
    int pivot = -1, best = 0;
    for (int i = 0; i < g; ++i) {
      if (edge_of[i] >= 0) continue;
      int n = 0;
      for (int id : at[i]) n += !used_b[G.edges()[id].b];
      if (pivot < 0 || n < best) {
        pivot = i;
        best = n;
      }
    }
    if (best == 0) return;
    for (int id : at[pivot]) {
      int b = G.edges()[id].b;
      if (used_b[b]) continue;
      used_b[b] = 1;
      edge_of[pivot] = id;
      self(self, matched + 1);
      edge_of[pivot] = -1;
      used_b[b] = 0;
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Generator& x, const Generator& y) {
    return x.sorted_edges() < y.sorted_edges();
  });
  return out;
}

/// Strong: every generator has the same sign, i.e. |det| = #matchings.
inline bool is_strong(const IntersectionGraph& G, int limit = Limits{}.permanent_size) {
  if (!has_perfect_matching(G))
    throw NoGenerators("intersection graph has no perfect matching");
  return heegaard::abs(det(G.signed_matrix())) == count_matchings(G, limit);
}

/// Each (a_i, b_j) pair carries edges of one sign only.
inline bool is_coherent(const IntersectionGraph& G) {
  const int g = G.genus();
  std::vector<int> seen(static_cast<size_t>(g) * g, 0);
  for (auto& e : G.edges()) {
    int& s = seen[static_cast<size_t>(e.a) * g + e.b];
    if (s == 0)
      s = e.sign;
    else if (s != e.sign)
      return false;
  }
  return true;
}

/// Every edge lies in some perfect matching.
inline bool is_one_extendible(const IntersectionGraph& G) {
  const int g = G.genus();
  auto adj = detail::support(G);
  std::vector<char> sa(g, 0), sb(g, 0);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (!adj[i][j]) continue;
      sa[i] = sb[j] = 1;
      bool ok = detail::perfect_matching_exists(adj, sa, sb);
      sa[i] = sb[j] = 0;
      if (!ok) return false;
    }
  return true;
}

/// A proper nonempty T in A with |N(T)| = |T|, together with N(T).
struct ReductionWitness {
  std::vector<int> alphas;
  std::vector<int> betas;
};

/// Smallest witness first, lexicographically least among equal sizes.
/// Cost is exponential in g; guarded by limit.
inline std::optional<ReductionWitness> reducibility_witness(const IntersectionGraph& G,
                                                            int limit = Limits{}.witness_genus) {
  const int g = G.genus();
  if (!has_perfect_matching(G))
    throw NoGenerators("intersection graph has no perfect matching");
  if (g > limit || g > 62)
    throw SizeLimitExceeded("reducibility scan over genus " + std::to_string(g) +
                            " exceeds the limit " + std::to_string(limit));
  std::vector<uint64_t> nbr(g, 0);
  for (auto& e : G.edges()) nbr[e.a] |= uint64_t{1} << e.b;
  std::vector<int> cur;
  std::optional<ReductionWitness> found;
  auto rec = [&](auto&& self, int start, int k, uint64_t mask) -> bool {
    if (static_cast<int>(cur.size()) == k) {
      if (std::popcount(mask) != k) return false;
      ReductionWitness w;
      w.alphas = cur;
      for (int b = 0; b < g; ++b)
        if ((mask >> b) & 1) w.betas.push_back(b);
      found = std::move(w);
      return true;
    }
    for (int i = start; i < g; ++i) {
      uint64_t next = mask | nbr[i];
      if (std::popcount(next) > k) continue;  // only grows from here
      cur.push_back(i);
      bool done = self(self, i + 1, k, next);
      cur.pop_back();
      if (done) return true;
    }
    return false;
  };
  for (int k = 1; k < g; ++k)
    if (rec(rec, 0, k, 0)) return found;
  return std::nullopt;
}

inline std::vector<int> complement_of(const std::vector<int>& xs, int g) {
  std::vector<char> in(g, 0);
  for (int x : xs) in.at(x) = 1;
  std::vector<int> out;
  for (int i = 0; i < g; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

/// Splits along a witness: G[T u N(T)] and G[(A-T) u (B-N(T))]. Edges from
/// A-T into N(T) lie in no perfect matching and are dropped.
inline std::pair<IntersectionGraph, IntersectionGraph> split_graph(const IntersectionGraph& G,
                                                                   const ReductionWitness& w) {
  const int g = G.genus();
  if (w.alphas.empty() || w.alphas.size() != w.betas.size() ||
      static_cast<int>(w.alphas.size()) >= g)
    throw PreconditionViolated("witness must pair a proper nonempty set with its neighbors");
  std::vector<char> in_b(g, 0);
  for (int b : w.betas) in_b.at(b) = 1;
  for (auto& e : G.edges())
    if (std::find(w.alphas.begin(), w.alphas.end(), e.a) != w.alphas.end() && !in_b[e.b])
      throw PreconditionViolated("witness block has an edge leaving its neighbor set");
  return {G.induced(w.alphas, w.betas),
          G.induced(complement_of(w.alphas, g), complement_of(w.betas, g))};
}

/// Rewrite from the proof of the degree-two reduction. v has m >= 1 edges to
/// w (one sign) and at most one edge (v, w') elsewhere. The v-w block is
/// removed, and every edge e = (u, w') with u != v is copied m times as
/// (u, w) with sign -s_vw * s_e * s_vw'. Matchings through a removed v-w
/// edge correspond to matchings through a copied edge, with equal sign.
/// Surviving edges keep their order; the copies follow.
inline IntersectionGraph lemma41_transform(const IntersectionGraph& G, Vertex v, Vertex w) {
  if (v.side == w.side) throw PreconditionViolated("v and w must lie in opposite parts");
  if (v.index < 0 || v.index >= G.genus() || w.index < 0 || w.index >= G.genus())
    throw PreconditionViolated("vertex index out of range");
  if (v.side == Side::B)
    return lemma41_transform(G.transpose(), {Side::A, v.index}, {Side::B, w.index}).transpose();

  std::vector<const GraphEdge*> block, other;
  for (auto& e : G.edges()) {
    if (e.a != v.index) continue;
    (e.b == w.index ? block : other).push_back(&e);
  }
  if (block.empty()) throw PreconditionViolated("v has no edge to w");
  if (other.size() > 1) throw PreconditionViolated("v has more than one edge away from w");
  const int s_vw = block.front()->sign;
  for (auto* e : block)
    if (e->sign != s_vw) throw PreconditionViolated("the v-w edges are not coherent");
  if (other.empty()) return G;

  const int w2 = other.front()->b;
  const int s_vw2 = other.front()->sign;
  std::vector<EdgeSpec> es;
  for (auto& e : G.edges())
    if (!(e.a == v.index && e.b == w.index)) es.push_back({e.a, e.b, e.sign});
  for (auto& e : G.edges()) {
    if (e.b != w2 || e.a == v.index) continue;
    for (size_t k = 0; k < block.size(); ++k) es.push_back({e.a, w.index, -s_vw * e.sign * s_vw2});
  }
  return IntersectionGraph(G.genus(), es);
}

/// Result of standard_form: count(G) = 2^rp3 * prod(count(component)).
struct StandardForm {
  int rp3 = 0;           // genus-1 pieces with two parallel edges
  int destabilized = 0;  // genus-1 pieces with a single edge
  std::vector<IntersectionGraph> components;
};

inline StandardForm standard_form(const IntersectionGraph& G, const Limits& limits = {}) {
  if (!has_perfect_matching(G))
    throw NoGenerators("intersection graph has no perfect matching");
  StandardForm out;
  std::deque<IntersectionGraph> work{G};
  while (!work.empty()) {
    IntersectionGraph H = std::move(work.front());
    work.pop_front();
    if (H.genus() == 0) continue;
    if (H.genus() == 1) {
      if (H.edge_count() == 1)
        ++out.destabilized;
      else if (H.edge_count() == 2)
        ++out.rp3;
      else
        out.components.push_back(std::move(H));
      continue;
    }
    if (auto w = reducibility_witness(H, limits.witness_genus)) {
      auto [left, right] = split_graph(H, *w);
      work.push_back(std::move(left));
      work.push_back(std::move(right));
      continue;
    }
    // No witness: H is 1-extendible, so every vertex has at least two
    // distinct neighbors. A degree-2 vertex therefore sees two neighbors.
    std::optional<Vertex> low;
    for (int side = 0; side < 2 && !low; ++side)
      for (int i = 0; i < H.genus() && !low; ++i) {
        Vertex v{side == 0 ? Side::A : Side::B, i};
        if (H.degree(v) <= 2) low = v;
      }
    if (!low) {
      out.components.push_back(std::move(H));
      continue;
    }
    int first = -1;
    for (auto& e : H.edges()) {
      if ((low->side == Side::A ? e.a : e.b) != low->index) continue;
      first = low->side == Side::A ? e.b : e.a;
      break;
    }
    Vertex w{low->side == Side::A ? Side::B : Side::A, first};
    work.push_back(lemma41_transform(H, *low, w));
  }
  return out;
}

/// Voorhoeve-type lower bound f(g) for cubic bipartite graphs:
/// h(1) = 2, h(g) = ceil(4 h(g-1) / 3), f(g) = ceil(3 h(g) / 2).
inline Integer voorhoeve_bound(int g) {
  if (g < 1) throw PreconditionViolated("voorhoeve_bound needs g >= 1");
  Integer h = 2;
  for (int k = 2; k <= g; ++k) h = (4 * h + 2) / 3;
  return (3 * h + 1) / 2;
}

/// m - n + 2 with n = 2g vertices and m edges.
inline int64_t matching_count_bound(const IntersectionGraph& G) {
  return static_cast<int64_t>(G.edge_count()) - 2 * static_cast<int64_t>(G.genus()) + 2;
}

/// Brute force over sign assignments. Flipping every edge at one vertex
/// flips every matching's sign, so edges of a spanning forest are fixed to
/// +1 and only the remaining edges are enumerated.
inline bool pfaffian_orientation_exists(const IntersectionGraph& G, const Limits& limits = {}) {
  const int g = G.genus();
  if (G.edge_count() > limits.max_edges || G.edge_count() > 62)
    throw SizeLimitExceeded("Pfaffian search over " + std::to_string(G.edge_count()) +
                            " edges exceeds the limit " + std::to_string(limits.max_edges));
  const Integer count = count_matchings(G, limits.permanent_size);
  if (count == 0) return true;
  std::vector<int> parent(2 * g);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<const GraphEdge*> free_edges, fixed_edges;
  for (auto& e : G.edges()) {
    int x = find(e.a), y = find(g + e.b);
    if (x != y) {
      parent[x] = y;
      fixed_edges.push_back(&e);
    } else {
      free_edges.push_back(&e);
    }
  }
  SmallMatrix base(g);
  for (auto* e : fixed_edges) base(e->a, e->b) += 1;
  const uint64_t total = uint64_t{1} << free_edges.size();
  for (uint64_t mask = 0; mask < total; ++mask) {
    SmallMatrix m = base;
    for (size_t k = 0; k < free_edges.size(); ++k)
      m(free_edges[k]->a, free_edges[k]->b) += ((mask >> k) & 1) ? -1 : 1;
    int64_t d = det(m);
    if (Integer(d < 0 ? -d : d) == count) return true;
  }
  return false;
}

/// Graphviz rendering; labels are 1-based and edges carry their sign.
inline std::string to_dot(const IntersectionGraph& G) {
  std::ostringstream os;
  os << "graph intersection {\n  rankdir=LR;\n";
  os << "  subgraph alpha {\n    rank=same;\n";
  for (int i = 0; i < G.genus(); ++i) os << "    a" << i + 1 << " [shape=circle];\n";
  os << "  }\n  subgraph beta {\n    rank=same;\n";
  for (int i = 0; i < G.genus(); ++i) os << "    b" << i + 1 << " [shape=box];\n";
  os << "  }\n";
  for (auto& e : G.edges())
    os << "  a" << e.a + 1 << " -- b" << e.b + 1 << " [label=\"" << (e.sign > 0 ? '+' : '-')
       << "\", id=\"e" << e.id << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace heegaard
