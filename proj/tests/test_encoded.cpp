#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "hmlab/encoded.hpp"
#include "hmlab/rng.hpp"

using namespace hmlab;

namespace {

RSGraph single_edge_host() {
  return RSGraph{BipartiteGraph(1, 1, {{0, 0}}), {Matching({{0, 0}})}, 1, 1};
}

BitMatrix random_bits(int r, int t, Rng& rng) {
  BitMatrix m(r, t);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < t; ++j) m.set(i, j, rng.bit());
  }
  return m;
}

// A (3,3)-RS graph: two blocks of parallel edges plus a diagonal
// matching between them.
RSGraph three_by_three_host() {
  std::vector<Matching> matchings = {
      Matching({{0, 0}, {1, 1}, {2, 2}}),
      Matching({{0, 3}, {1, 4}, {2, 5}}),
      Matching({{3, 3}, {4, 4}, {5, 5}}),
  };
  std::vector<Edge> edges;
  for (const auto& m : matchings) {
    edges.insert(edges.end(), m.edges().begin(), m.edges().end());
  }
  return RSGraph{BipartiteGraph(6, 6, edges), matchings, 3, 3};
}

}  // namespace

TEST_CASE("single edge host, straight and crossed") {
  BitMatrix straight(1, 1);
  const EncodedRs h0 = encode_rs(single_edge_host(), straight);
  CHECK(h0.graph().edges() == std::vector<Edge>{{0, 0}, {1, 1}});

  BitMatrix crossed(1, 1);
  crossed.set(0, 0, true);
  const EncodedRs h1 = encode_rs(single_edge_host(), crossed);
  CHECK(h1.graph().edges() == std::vector<Edge>{{0, 1}, {1, 0}});
}

TEST_CASE("the 3x3 illustration graph") {
  // Per-matching routing bits (1,0,1), (0,0,0), (1,1,0).
  BitMatrix bits(3, 3);
  bits.set(0, 0, true);
  bits.set(2, 0, true);
  bits.set(0, 2, true);
  bits.set(1, 2, true);
  const EncodedRs h = encode_rs(three_by_three_host(), bits);

  const std::vector<Edge> expected = {
      {0, 3}, {0, 6},  {1, 1},  {1, 4},  {2, 5},  {2, 8},
      {3, 9}, {4, 10}, {5, 5},  {6, 0},  {6, 9},  {7, 7},
      {7, 10}, {8, 2},  {8, 11}, {9, 3},  {10, 4}, {11, 11},
  };
  std::vector<Edge> sorted = expected;
  std::sort(sorted.begin(), sorted.end());
  CHECK(h.graph().edges() == sorted);
  CHECK(verify_rs(h.as_rs()).valid());
}

TEST_CASE("rep matchings") {
  BitMatrix straight(1, 1);
  const EncodedRs h = encode_rs(single_edge_host(), straight);
  CHECK(h.rep_matching(0).edges() == std::vector<Edge>{{0, 0}, {1, 1}});

  Rng rng(7);
  const RSGraph host = disjoint_blocks_rs(2, 2);
  const EncodedRs g = encode_rs(host, random_bits(2, 2, rng));
  CHECK(g.rep_matching(0).size() == 4);
  CHECK(g.rep_matching(1).size() == 4);
  CHECK_THROWS_AS(g.rep_matching(2), std::out_of_range);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(encode_rs(disjoint_blocks_rs(2, 2), BitMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("product graphs are doubled RS graphs") {
  Rng rng(99);
  for (int r = 1; r <= 3; ++r) {
    for (int t = 1; t <= 3; ++t) {
      const RSGraph host = disjoint_blocks_rs(r, t);
      for (int trial = 0; trial < 10; ++trial) {
        const EncodedRs h = encode_rs(host, random_bits(r, t, rng));
        CHECK(h.graph().edge_count() == static_cast<std::size_t>(2 * r * t));
        CHECK(h.graph().left_count() == 2 * host.n());
        const RSGraph view = h.as_rs();
        CHECK(view.r == 2 * r);
        CHECK(view.t == t);
        CHECK(verify_rs(view).valid());
        for (int j = 0; j < t; ++j) {
          CHECK(is_induced_matching(h.graph(), h.rep_matching(j)));
        }
      }
    }
  }
}

TEST_CASE("all-zero bits give two disjoint host copies") {
  const RSGraph host = ap_rs(3, brute_force_ap_free(5));
  const EncodedRs h = encode_rs(host, BitMatrix(host.r, host.t));
  std::vector<Edge> expected;
  for (const Edge& e : host.graph.edges()) {
    expected.push_back(e);
    expected.push_back({e.left + host.n(), e.right + host.n()});
  }
  std::sort(expected.begin(), expected.end());
  CHECK(h.graph().edges() == expected);
}

TEST_CASE("flipping one bit moves exactly two edges") {
  Rng rng(123);
  const RSGraph host = disjoint_blocks_rs(3, 2);
  for (int trial = 0; trial < 20; ++trial) {
    BitMatrix bits = random_bits(3, 2, rng);
    const EncodedRs before = encode_rs(host, bits);
    const int i = rng.below_int(3);
    const int j = rng.below_int(2);
    bits.set(i, j, !bits.get(i, j));
    const EncodedRs after = encode_rs(host, bits);

    std::vector<Edge> diff;
    std::set_symmetric_difference(before.graph().edges().begin(), before.graph().edges().end(),
                                  after.graph().edges().begin(), after.graph().edges().end(),
                                  std::back_inserter(diff));
    CHECK(diff.size() == 4);  // two edges out, two in
  }
}

TEST_CASE("bit matrix file format") {
  Rng rng(5);
  BitMatrix m = random_bits(4, 3, rng);
  std::stringstream s;
  write_bit_matrix(s, m);
  const BitMatrix back = read_bit_matrix(s);
  CHECK(back == m);

  std::stringstream bad("bitmatrix 2 2\n01\n0x\n");
  CHECK_THROWS_AS(read_bit_matrix(bad), std::runtime_error);
}
