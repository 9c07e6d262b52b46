#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hmlab/rng.hpp"
#include "hmlab/rs.hpp"

using namespace hmlab;

namespace {

// Frozen maximum sizes of 3-AP-free subsets of [1, n] for n = 1..14,
// computed by the exhaustive search itself and double-checked by hand
// for small n.
constexpr int kMaxApFreeSize[] = {1, 2, 2, 3, 4, 4, 4, 4, 5, 5, 6, 6, 7, 8};

RSGraph with_graph_edge_added(const RSGraph& g, const Edge& e) {
  std::vector<Edge> edges = g.graph.edges();
  edges.push_back(e);
  return RSGraph{BipartiteGraph(g.n(), g.n(), std::move(edges)), g.matchings, g.r, g.t};
}

}  // namespace

TEST_CASE("disjoint blocks construction") {
  const RSGraph one = disjoint_blocks_rs(1, 1);
  CHECK(one.n() == 1);
  CHECK(one.graph.edges() == std::vector<Edge>{{0, 0}});
  CHECK(verify_rs(one).valid());

  const RSGraph g = disjoint_blocks_rs(2, 3);
  CHECK(g.n() == 6);
  CHECK(g.graph.edge_count() == 6);
  CHECK(g.matchings.size() == 3);
  CHECK(verify_rs(g).valid());

  CHECK(verify_rs(disjoint_blocks_rs(3, 2)).valid());
  CHECK_THROWS_AS(disjoint_blocks_rs(0, 1), std::invalid_argument);
}

TEST_CASE("verify_rs rejects single-edge mutations with witnesses") {
  const RSGraph g = disjoint_blocks_rs(2, 3);

  // Extra edge between matching 1's left vertex and its other right vertex.
  const RsReport added = verify_rs(with_graph_edge_added(g, {0, 1}));
  REQUIRE_FALSE(added.valid());
  bool has_witness = false;
  for (const auto& v : added.violations) {
    if (v.find("(0,1)") != std::string::npos) has_witness = true;
  }
  CHECK(has_witness);

  // Move one edge from matching 1 to matching 2.
  RSGraph moved = g;
  std::vector<Edge> m1 = moved.matchings[0].edges();
  std::vector<Edge> m2 = moved.matchings[1].edges();
  m2.push_back(m1.back());
  m1.pop_back();
  moved.matchings[0] = Matching(m1);
  moved.matchings[1] = Matching(m2);
  CHECK_FALSE(verify_rs(moved).valid());

  // Delete an edge from the graph but not from the matching list.
  std::vector<Edge> fewer = g.graph.edges();
  fewer.pop_back();
  const RSGraph deleted{BipartiteGraph(g.n(), g.n(), fewer), g.matchings, g.r, g.t};
  CHECK_FALSE(verify_rs(deleted).valid());
}

TEST_CASE("brute force AP-free sets") {
  const APFreeSet five = brute_force_ap_free(5);
  CHECK(five.members == std::vector<int>{1, 2, 4, 5});

  const APFreeSet nine = brute_force_ap_free(9);
  CHECK(nine.members == std::vector<int>{1, 2, 4, 8, 9});

  CHECK(brute_force_ap_free(1).members == std::vector<int>{1});

  for (int n = 1; n <= 14; ++n) {
    const APFreeSet s = brute_force_ap_free(n);
    CHECK(is_three_ap_free(s.members));
    CHECK(static_cast<int>(s.members.size()) == kMaxApFreeSize[n - 1]);
  }
  CHECK_THROWS_AS(brute_force_ap_free(25), std::invalid_argument);
}

TEST_CASE("behrend AP-free sets") {
  for (int k_max : {2, 3, 5, 9, 17, 101, 1000}) {
    const APFreeSet s = behrend_ap_free(k_max);
    CHECK(is_three_ap_free(s.members));
    CHECK(s.members.size() >= 2);
    CHECK(s.members.back() <= k_max);
  }
  for (int k_max = 2; k_max <= 14; ++k_max) {
    CHECK(behrend_ap_free(k_max).members.size() <=
          brute_force_ap_free(k_max).members.size());
  }
  // Density sanity floor (very loose) at larger sizes.
  const APFreeSet big = behrend_ap_free(10000);
  CHECK(static_cast<double>(big.members.size()) >
        10000.0 / std::exp(4.0 * std::sqrt(std::log(10000.0))));
}

TEST_CASE("ap_rs golden instances") {
  // m=2, S={1,2}: matchings {(2,3),(3,5)} and {(3,4),(4,6)} in 1-based
  // vertex labels, shifted down once for 0-based ids.
  const RSGraph g = ap_rs(2, APFreeSet{2, {1, 2}});
  CHECK(g.r == 2);
  CHECK(g.t == 2);
  CHECK(g.n() == 6);
  CHECK(g.matchings[0].edges() == std::vector<Edge>{{1, 2}, {2, 4}});
  CHECK(g.matchings[1].edges() == std::vector<Edge>{{2, 3}, {3, 5}});
  CHECK(verify_rs(g).valid());

  const RSGraph single = ap_rs(1, APFreeSet{1, {1}});
  CHECK(single.graph.edges() == std::vector<Edge>{{1, 2}});
  CHECK(verify_rs(single).valid());

  const RSGraph from_brute = ap_rs(3, brute_force_ap_free(5));
  CHECK(from_brute.r == 4);
  CHECK(from_brute.t == 3);
  CHECK(verify_rs(from_brute).valid());
}

TEST_CASE("ap_rs induced property, exhaustively over small seeds") {
  for (int k_max = 1; k_max <= 12; ++k_max) {
    const APFreeSet s = brute_force_ap_free(k_max);
    for (int m = 1; m <= 20; ++m) {
      const RSGraph g = ap_rs(m, s);
      CHECK(verify_rs(g).valid());
      for (const Matching& matching : g.matchings) {
        CHECK(is_induced_matching(g.graph, matching));
      }
    }
  }
}

TEST_CASE("bipartite double cover") {
  const BipartiteGraph single = bipartite_double_cover(2, {{0, 1}});
  CHECK(single.edges() == std::vector<Edge>{{0, 1}, {1, 0}});

  // Triangle -> C6.
  const BipartiteGraph c6 = bipartite_double_cover(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(c6.edges() ==
        std::vector<Edge>{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  CHECK(hopcroft_karp(c6).size() == 3);

  CHECK(bipartite_double_cover(4, {}).edge_count() == 0);
}

TEST_CASE("double cover of disjoint triangles is a doubled RS graph") {
  // r disjoint triangles form a non-bipartite (r,3)-RS graph: matching j
  // takes the j-th edge of every triangle.
  for (int r = 1; r <= 4; ++r) {
    std::vector<std::vector<Edge>> matchings(3);
    for (int tri = 0; tri < r; ++tri) {
      const int base = 3 * tri;
      matchings[0].push_back({base + 0, base + 1});
      matchings[1].push_back({base + 1, base + 2});
      matchings[2].push_back({base + 0, base + 2});
    }
    const RSGraph covered = bipartite_double_cover_rs(3 * r, matchings);
    CHECK(covered.r == 2 * r);
    CHECK(covered.t == 3);
    CHECK(verify_rs(covered).valid());
  }
}

TEST_CASE("rs file format round trip") {
  const RSGraph g = ap_rs(3, brute_force_ap_free(5));
  std::stringstream s;
  write_rs(s, g);
  const RSGraph back = read_rs(s);
  CHECK(back.r == g.r);
  CHECK(back.t == g.t);
  CHECK(back.graph.edges() == g.graph.edges());
  for (int j = 0; j < g.t; ++j) CHECK(back.matchings[j].edges() == g.matchings[j].edges());

  std::stringstream twice;
  write_rs(twice, back);
  std::stringstream original;
  write_rs(original, g);
  CHECK(twice.str() == original.str());
}
