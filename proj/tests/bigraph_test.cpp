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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "graph_fixtures.hpp"
#include "heegaard/bigraph.hpp"
#include "oracles.hpp"

using namespace heegaard;
using fixtures::figure_eight_graph;
using fixtures::mixed_graph;

namespace {

// Witness by plain bitmask scan: smallest size, then lexicographic.
std::optional<std::vector<int>> witness_oracle(const IntersectionGraph& G) {
  const int g = G.genus();
  for (int k = 1; k < g; ++k)
    for (auto& T : oracle::subsets(g, k)) {
      std::set<int> n;
      for (auto& e : G.edges())
        if (std::find(T.begin(), T.end(), e.a) != T.end()) n.insert(e.b);
      if (static_cast<int>(n.size()) == k) return T;
    }
  return std::nullopt;
}

// Whether each edge lies in a matching, by enumerating all permutations.
bool one_extendible_oracle(const IntersectionGraph& G) {
  const int g = G.genus();
  auto mult = G.multiplicity_matrix();
  std::set<std::pair<int, int>> covered;
  oracle::for_each_permutation(g, [&](const std::vector<int>& p) {
    for (int i = 0; i < g; ++i)
      if (mult(i, p[i]) == 0) return;
    for (int i = 0; i < g; ++i) covered.insert({i, p[i]});
  });
  for (auto& e : G.edges())
    if (!covered.count({e.a, e.b})) return false;
  return true;
}

}  // namespace

TEST(Graph, ConstructionChecksRanges) {
  EXPECT_THROW(IntersectionGraph(2, {{0, 2, 1}}), PreconditionViolated);
  EXPECT_THROW(IntersectionGraph(2, {{0, 1, 0}}), PreconditionViolated);
  auto G = figure_eight_graph();
  EXPECT_EQ(G.signed_matrix(), (SignedMatrix{{-2, -1}, {-1, 2}}));
  for (int k = 0; k < G.edge_count(); ++k) EXPECT_EQ(G.edges()[k].id, k);
}

TEST(Generators, ParallelEdges) {
  std::vector<EdgeSpec> es(4, {0, 0, 1});
  auto gens = enumerate_generators(IntersectionGraph(1, es));
  ASSERT_EQ(gens.size(), 4u);
  for (auto& g : gens) EXPECT_EQ(g.sign, 1);
}

TEST(Generators, FigureEight) {
  auto gens = enumerate_generators(figure_eight_graph());
  ASSERT_EQ(gens.size(), 5u);
  for (auto& g : gens) EXPECT_EQ(g.sign, gens.front().sign);
  for (size_t k = 1; k < gens.size(); ++k) EXPECT_LT(gens[k - 1].sorted_edges(), gens[k].sorted_edges());
}

TEST(Generators, SingleMatching) {
  auto gens = enumerate_generators(IntersectionGraph(2, {{0, 0, 1}, {1, 1, 1}, {0, 1, 1}}));
  ASSERT_EQ(gens.size(), 1u);
  EXPECT_EQ(gens[0].sigma, (std::vector<int>{0, 1}));
}

TEST(Generators, EmptyWhenNoMatching) {
  EXPECT_TRUE(enumerate_generators(IntersectionGraph(2, {{0, 0, 1}, {1, 0, 1}})).empty());
}

TEST(Generators, SignedSumIsDeterminant) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    int g = 1 + trial % 6;
    auto G = fixtures::random_graph(rng, g, g + trial % 9);
    auto gens = enumerate_generators(G);
    Integer sum = 0;
    for (auto& x : gens) sum += x.sign;
    ASSERT_EQ(sum, det(G.signed_matrix()));
    auto t = oracle::tally(g, fixtures::oracle_edges(G));
    ASSERT_EQ(Integer(gens.size()), t.count);
    ASSERT_EQ(count_matchings(G), t.count);
    ASSERT_EQ(sum, t.signed_sum);
  }
}

TEST(Generators, DisjointAndSigned) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 4, 5);
    for (auto& gen : enumerate_generators(G)) {
      std::set<int> bs;
      int s = 1;
      for (int i = 0; i < 4; ++i) {
        auto& e = G.edges()[gen.edge_of[i]];
        ASSERT_EQ(e.a, i);
        bs.insert(e.b);
        s *= e.sign;
      }
      ASSERT_EQ(bs.size(), 4u);
      ASSERT_EQ(gen.sign, s * oracle::perm_sign(gen.sigma));
    }
  }
}

TEST(Strong, Examples) {
  EXPECT_TRUE(is_strong(figure_eight_graph()));
  EXPECT_FALSE(is_strong(mixed_graph()));
  EXPECT_EQ(count_matchings(mixed_graph()), 5);
  EXPECT_EQ(det(mixed_graph().signed_matrix()), 1);
  EXPECT_FALSE(is_strong(IntersectionGraph(2, {{0, 0, 1}, {0, 0, -1}, {1, 1, 1}})));
  EXPECT_THROW(is_strong(IntersectionGraph(2, {{0, 0, 1}, {1, 0, 1}})), NoGenerators);
}

TEST(Strong, EquivalentToSameSignGenerators) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 1 + trial % 5, trial % 6, trial % 2);
    auto t = oracle::tally(G.genus(), fixtures::oracle_edges(G));
    ASSERT_EQ(is_strong(G), t.positive == 0 || t.negative == 0);
  }
}

TEST(Coherence, Examples) {
  EXPECT_TRUE(is_coherent(figure_eight_graph()));
  EXPECT_TRUE(is_one_extendible(figure_eight_graph()));
  EXPECT_FALSE(is_coherent(mixed_graph()));
  EXPECT_FALSE(is_one_extendible(IntersectionGraph(2, {{0, 0, 1}, {1, 1, 1}, {0, 1, 1}})));
  EXPECT_TRUE(is_one_extendible(IntersectionGraph(1, {{0, 0, 1}})));
}

TEST(Coherence, OneExtendibleAgreesWithOracle) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 400; ++trial) {
    auto G = fixtures::random_graph(rng, 1 + trial % 5, 2 + trial % 10);
    ASSERT_EQ(is_one_extendible(G), one_extendible_oracle(G));
  }
}

TEST(Coherence, StrongAndExtendibleImpliesCoherent) {
  std::mt19937_64 rng(25);
  int seen = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 1 + trial % 4, trial % 7);
    if (is_strong(G) && is_one_extendible(G)) {
      ++seen;
      ASSERT_TRUE(is_coherent(G));
    }
  }
  EXPECT_GT(seen, 50);
}

TEST(Witness, Examples) {
  auto block = IntersectionGraph(2, {{0, 0, 1}, {1, 1, 1}});
  auto w = reducibility_witness(block);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->alphas, std::vector<int>{0});
  EXPECT_EQ(w->betas, std::vector<int>{0});
  EXPECT_FALSE(reducibility_witness(figure_eight_graph()));
  // diag(-1, 1)
  auto diag = IntersectionGraph(2, {{0, 0, -1}, {1, 1, 1}});
  ASSERT_TRUE(reducibility_witness(diag));
  EXPECT_EQ(reducibility_witness(diag)->alphas, std::vector<int>{0});
  EXPECT_THROW(reducibility_witness(IntersectionGraph(2, {{0, 0, 1}})), NoGenerators);
}

TEST(Witness, AgreesWithOracleAndHetyei) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 500; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 1 + trial % 6, trial % 8);
    auto w = reducibility_witness(G);
    auto o = witness_oracle(G);
    ASSERT_EQ(w.has_value(), o.has_value());
    if (w) ASSERT_EQ(w->alphas, *o);
    // A graph with a perfect matching and no witness is 1-extendible.
    if (!w) ASSERT_TRUE(is_one_extendible(G));
  }
}

TEST(Witness, SplitMultipliesCounts) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 300; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 2 + trial % 4, trial % 5, true);
    auto w = reducibility_witness(G);
    if (!w) continue;
    auto [l, r] = split_graph(G, *w);
    ASSERT_EQ(count_matchings(l) * count_matchings(r), count_matchings(G));
    if (is_strong(G)) {
      ASSERT_TRUE(is_strong(l));
      ASSERT_TRUE(is_strong(r));
    }
  }
}

TEST(Lemma41, DocumentedExample) {
  // a1: 2 edges to b1, 1 to b2; a2: 1 edge to b1, 1 to b2.
  IntersectionGraph G(2, {{0, 0, 1}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  auto H = lemma41_transform(G, {Side::A, 0}, {Side::B, 0});
  auto m = H.multiplicity_matrix();
  EXPECT_EQ(m, (SmallMatrix{{0, 1}, {3, 1}}));
  EXPECT_EQ(count_matchings(G), 3);
  EXPECT_EQ(count_matchings(H), 3);
  EXPECT_EQ(det(H.signed_matrix()), det(G.signed_matrix()));
}

TEST(Lemma41, LoneBlockIsUnchanged) {
  IntersectionGraph G(2, {{0, 0, 1}, {1, 1, 1}, {1, 0, 1}});
  auto H = lemma41_transform(G, {Side::A, 0}, {Side::B, 0});
  EXPECT_EQ(H.multiplicity_matrix(), G.multiplicity_matrix());
  EXPECT_TRUE(reducibility_witness(H));
}

TEST(Lemma41, Refusals) {
  auto G = figure_eight_graph();  // a1 has edges to b1 (2) and b2 (1)
  EXPECT_THROW(lemma41_transform(G, {Side::A, 0}, {Side::A, 1}), PreconditionViolated);
  // a2 has 2 edges away from b1.
  EXPECT_THROW(lemma41_transform(G, {Side::A, 1}, {Side::B, 0}), PreconditionViolated);
  IntersectionGraph incoherent(2, {{0, 0, 1}, {0, 0, -1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}});
  EXPECT_THROW(lemma41_transform(incoherent, {Side::A, 0}, {Side::B, 0}), PreconditionViolated);
  IntersectionGraph far(2, {{0, 0, 1}, {1, 1, 1}});
  EXPECT_THROW(lemma41_transform(far, {Side::A, 0}, {Side::B, 1}), PreconditionViolated);
}

// Every vertex with one or two neighbor classes is an admissible pivot; the
// transform must keep the count, the signed sum and strongness.
TEST(Lemma41, PreservesCountsAndSigns) {
  std::mt19937_64 rng(28);
  int applied = 0;
  for (int trial = 0; trial < 4000 && applied < 400; ++trial) {
    auto G = fixtures::random_graph(rng, 2 + trial % 4, 3 + trial % 9, trial % 3 != 0);
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < G.genus(); ++i)
        for (int j = 0; j < G.genus(); ++j) {
          Vertex v{side ? Side::B : Side::A, i}, w{side ? Side::A : Side::B, j};
          IntersectionGraph H;
          try {
            H = lemma41_transform(G, v, w);
          } catch (const PreconditionViolated&) {
            continue;
          }
          ++applied;
          auto before = oracle::tally(G.genus(), fixtures::oracle_edges(G));
          auto after = oracle::tally(H.genus(), fixtures::oracle_edges(H));
          ASSERT_EQ(before.positive, after.positive);
          ASSERT_EQ(before.negative, after.negative);
          // v keeps its single outside edge, or nothing changes.
          int block = 0;
          for (auto& e : G.edges())
            block += side ? (e.b == i && e.a == j) : (e.a == i && e.b == j);
          if (G.degree(v) > block)
            ASSERT_EQ(H.degree(v), 1);
          else
            ASSERT_EQ(H.multiplicity_matrix(), G.multiplicity_matrix());
        }
  }
  EXPECT_GE(applied, 400);
}

TEST(StandardForm, Examples) {
  auto rp3 = standard_form(IntersectionGraph(2, {{0, 0, 1}, {0, 0, 1}, {1, 1, 1}, {1, 1, 1}}));
  EXPECT_EQ(rp3.rp3, 2);
  EXPECT_TRUE(rp3.components.empty());

  std::vector<EdgeSpec> lens(5, {0, 0, 1});
  auto one = standard_form(IntersectionGraph(1, lens));
  EXPECT_EQ(one.rp3, 0);
  ASSERT_EQ(one.components.size(), 1u);
  EXPECT_EQ(one.components[0].edge_count(), 5);

  auto fe = standard_form(figure_eight_graph());
  EXPECT_EQ(fe.rp3, 0);
  ASSERT_EQ(fe.components.size(), 1u);
  EXPECT_EQ(fe.components[0].multiplicity_matrix(), figure_eight_graph().multiplicity_matrix());
  EXPECT_THROW(standard_form(IntersectionGraph(2, {{0, 0, 1}})), NoGenerators);
}

TEST(StandardForm, CountContractAndDegree) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 1 + trial % 5, trial % 8, true);
    auto sf = standard_form(G);
    Integer prod = Integer(1) << sf.rp3;
    for (auto& c : sf.components) {
      prod *= count_matchings(c);
      if (c.genus() >= 2) {
        ASSERT_GE(c.min_degree(), 3);
        ASSERT_FALSE(reducibility_witness(c));
      }
    }
    ASSERT_EQ(prod, count_matchings(G));
    if (is_strong(G))
      for (auto& c : sf.components) ASSERT_TRUE(is_strong(c));
  }
}

TEST(Bounds, VoorhoeveTable) {
  std::vector<Integer> f;
  for (int g = 1; g <= 6; ++g) f.push_back(voorhoeve_bound(g));
  EXPECT_EQ(f, (std::vector<Integer>{3, 5, 6, 9, 12, 17}));
  EXPECT_THROW(voorhoeve_bound(0), PreconditionViolated);
}

TEST(Bounds, MatchingCountBound) {
  EXPECT_EQ(matching_count_bound(figure_eight_graph()), 4);
  EXPECT_LE(Integer(matching_count_bound(figure_eight_graph())), count_matchings(figure_eight_graph()));
}

TEST(Bounds, OneExtendibleGraphsMeetTheBound) {
  std::mt19937_64 rng(30);
  int seen = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 1 + trial % 4, trial % 9);
    if (!is_one_extendible(G)) continue;
    ++seen;
    ASSERT_GE(count_matchings(G), Integer(matching_count_bound(G)));
  }
  EXPECT_GT(seen, 100);
}

TEST(Pfaffian, Examples) {
  std::vector<EdgeSpec> par(4, {0, 0, -1});
  EXPECT_TRUE(pfaffian_orientation_exists(IntersectionGraph(1, par)));
  std::vector<EdgeSpec> k33;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k33.push_back({i, j, 1});
  EXPECT_FALSE(pfaffian_orientation_exists(IntersectionGraph(3, k33)));
  EXPECT_TRUE(pfaffian_orientation_exists(figure_eight_graph()));
  Limits tight;
  tight.max_edges = 5;
  EXPECT_THROW(pfaffian_orientation_exists(figure_eight_graph(), tight), SizeLimitExceeded);
}

TEST(Pfaffian, CoherentPolyaGraphsArePfaffian) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 1 + trial % 4, trial % 6, true);
    if (is_polya(G.signed_matrix())) ASSERT_TRUE(pfaffian_orientation_exists(G));
  }
}

// On 1-extendible graphs a Pfaffian orientation is coherent, so it exists
// exactly when some choice of one sign per pair gives a Polya matrix.
TEST(Pfaffian, MatchesCoherentPolyaSignChoice) {
  std::mt19937_64 rng(32);
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 150; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 2 + trial % 3, 2 + trial % 6);
    if (!is_one_extendible(G)) continue;
    ++checked;
    auto mult = G.multiplicity_matrix();
    const int g = G.genus();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        if (mult(i, j)) pairs.push_back({i, j});
    bool any = false;
    for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()) && !any; ++mask) {
      SignedMatrix m(g);
      for (size_t k = 0; k < pairs.size(); ++k)
        m(pairs[k].first, pairs[k].second) = ((mask >> k) & 1 ? -1 : 1) * mult(pairs[k].first, pairs[k].second);
      any = heegaard::abs(oracle::det(m)) == oracle::permanent(m.abs());
    }
    ASSERT_EQ(pfaffian_orientation_exists(G), any);
  }
  EXPECT_GE(checked, 100);
}

// Strong 1-extendible graphs of genus >= 4 have an alpha vertex meeting at
// most three beta vertices; checked on whatever the sampler produces.
TEST(Strong, LowNeighborAlphaVertexInvariant) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 3000; ++trial) {
    auto G = fixtures::random_matchable_graph(rng, 4 + trial % 2, 4 + trial % 8, true);
    if (!is_one_extendible(G) || !is_strong(G)) continue;
    auto m = G.multiplicity_matrix();
    bool found = false;
    for (int i = 0; i < G.genus(); ++i) {
      int n = 0;
      for (int j = 0; j < G.genus(); ++j) n += m(i, j) != 0;
      if (n <= 3) found = true;
    }
    ASSERT_TRUE(found);
  }
}

TEST(Dot, ListsEveryEdge) {
  auto dot = to_dot(figure_eight_graph());
  EXPECT_NE(dot.find("a1 -- b1 [label=\"-\""), std::string::npos);
  EXPECT_NE(dot.find("a2 -- b2 [label=\"+\""), std::string::npos);
  EXPECT_NE(dot.find("id=\"e5\""), std::string::npos);
}
