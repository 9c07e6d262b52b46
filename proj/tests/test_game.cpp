#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hmlab/game.hpp"

using namespace hmlab;

namespace {

GameParams small_params(std::uint64_t seed, double delta = 0.1) {
  GameParams p;
  p.n1 = 4;
  p.r1 = 2;
  p.t1 = 2;
  p.n2 = 22;
  p.r2 = 11;
  p.t2 = 2;
  p.k = 2;
  p.delta = delta;
  p.seed = seed;
  return p;
}

GameInstance small_instance(std::uint64_t seed, double delta = 0.1) {
  return sample_instance(small_params(seed, delta), disjoint_blocks_rs(2, 2),
                         disjoint_blocks_rs(11, 2));
}

}  // namespace

TEST_CASE("instance size formula") {
  const GameInstance inst = small_instance(7);
  CHECK(inst.n() == 140);  // 8*22 - 4*11 + 2*4
  const BipartiteGraph u = inst.union_graph();
  CHECK(u.left_count() == 140);
  CHECK(u.right_count() == 140);
  CHECK(verify_instance(inst).valid());
}

TEST_CASE("parameter validation") {
  GameParams p = small_params(1);
  p.delta = 0.25;
  CHECK_THROWS_AS(sample_instance(p, disjoint_blocks_rs(2, 2), disjoint_blocks_rs(11, 2)),
                  std::invalid_argument);
  p = small_params(1);
  p.k = 3;  // capacity: 12 > 0.9 * 11
  CHECK_THROWS_AS(sample_instance(p, disjoint_blocks_rs(2, 2), disjoint_blocks_rs(11, 2)),
                  std::invalid_argument);
  p = small_params(1);
  CHECK_THROWS_AS(sample_instance(p, disjoint_blocks_rs(2, 3), disjoint_blocks_rs(11, 2)),
                  std::invalid_argument);
}

TEST_CASE("zero drop keeps the whole first graph") {
  const GameInstance inst = small_instance(3, 0.0);
  CHECK(inst.phase1a.size() == inst.rs1.graph.edge_count());
  CHECK(inst.hidden_survivors.size() == static_cast<std::size_t>(inst.params.r1));

  // Claim arithmetic at delta = 0: the certified matching has size n - r1.
  const Matching m = certified_large_matching(inst);
  CHECK(static_cast<int>(m.size()) == inst.n() - inst.params.r1);
}

TEST_CASE("certified matching size and validity across seeds") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GameInstance inst = small_instance(seed);
    const Matching m = certified_large_matching(inst);
    const std::size_t expected = 2 * (4 * 22 - 2 * 11) + 2 * (4 - 2) + inst.hidden_survivors.size();
    CHECK(m.size() == expected);
    CHECK(m.contained_in(inst.union_graph()));
  }
}

TEST_CASE("avoidance bound holds with a checked cover") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const GameInstance inst = small_instance(seed);
    const AvoidanceBound bound = max_matching_avoiding_hidden(inst);
    CHECK(bound.max_matching_size <= inst.n() - 2 * inst.params.r1);
    CHECK(static_cast<int>(bound.cover.size()) == inst.n() - 2 * inst.params.r1);
    // The reduced graph always has a matching at least as large as the
    // whole graph's minus the removed edges, so the bound is not vacuous.
    CHECK(bound.max_matching_size >= inst.n() - 2 * inst.params.r1 -
                                        static_cast<int>(inst.hidden_survivors.size()));
  }
}

TEST_CASE("hidden index is uniform") {
  GameParams p;
  p.n1 = 8;
  p.r1 = 2;
  p.t1 = 4;
  p.n2 = 36;
  p.r2 = 18;
  p.t2 = 2;
  p.k = 2;
  p.delta = 0.1;
  const RSGraph rs1 = disjoint_blocks_rs(2, 4);
  const RSGraph rs2 = disjoint_blocks_rs(18, 2);
  std::vector<int> counts(4, 0);
  const int trials = 1000;
  for (int seed = 0; seed < trials; ++seed) {
    p.seed = static_cast<std::uint64_t>(seed);
    counts[sample_instance(p, rs1, rs2).hidden_index] += 1;
  }
  const double mean = trials / 4.0;
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(counts[j] - mean) <= 3.0 * sigma);
}

GameParams wide_params(std::uint64_t seed, double delta = 0.2) {
  GameParams p;
  p.n1 = 20;
  p.r1 = 10;
  p.t1 = 2;
  p.n2 = 100;
  p.r2 = 50;
  p.t2 = 2;
  p.k = 2;
  p.delta = delta;
  p.seed = seed;
  return p;
}

GameInstance wide_instance(std::uint64_t seed, double delta = 0.2) {
  return sample_instance(wide_params(seed, delta), disjoint_blocks_rs(10, 2),
                         disjoint_blocks_rs(50, 2));
}

TEST_CASE("evaluate_output") {
  const GameInstance inst = wide_instance(42);
  CHECK(evaluate_output(inst, inst.hidden_survivors) ==
        static_cast<int>(inst.hidden_survivors.size()));
  CHECK(evaluate_output(inst, {}) == 0);

  // An edge of rs1 that was dropped from the stream is not in the core
  // graph, so answering it zeroes the value.
  std::vector<Edge> dropped;
  for (const Edge& e : inst.rs1.graph.edges()) {
    const Edge mapped = inst.map_core(e);
    if (!std::binary_search(inst.phase1a.begin(), inst.phase1a.end(), mapped)) {
      dropped.push_back(mapped);
    }
  }
  REQUIRE_FALSE(dropped.empty());
  std::vector<Edge> answer = inst.hidden_survivors;
  answer.push_back(dropped.front());
  CHECK(evaluate_output(inst, answer) == 0);
}

TEST_CASE("approx threshold formula") {
  const ApproxThreshold t = approx_threshold(small_params(0));
  CHECK(t.beta == doctest::Approx(1.2 / 137.6).epsilon(1e-9));
  CHECK(t.target_matching_size ==
        doctest::Approx(140.0 - 2 * 2 + 2 * 0.1 * 2).epsilon(1e-12));

  GameParams bad = small_params(0);
  bad.delta = 0.25;
  CHECK_THROWS_AS(approx_threshold(bad), std::domain_error);
}

TEST_CASE("rs lower bound ratio") {
  CHECK(rs_lower_bound_ratio(0.5, 1.0) == doctest::Approx(1.0 - 0.5 / 25.5).epsilon(1e-12));
  // The headline number: 0.98 to two decimals.
  CHECK(std::round(rs_lower_bound_ratio(0.5, 1.0) * 100.0) / 100.0 == doctest::Approx(0.98));
  CHECK(rs_lower_bound_ratio(0.5, 0.5) == doctest::Approx(1.0 - 0.5 / 49.5).epsilon(1e-12));
  CHECK(rs_lower_bound_ratio(1e-9, 0.5) > 1.0 - 1e-9);
  CHECK_THROWS_AS(rs_lower_bound_ratio(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(rs_lower_bound_ratio(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("stream assembly") {
  const GameInstance inst = small_instance(9);
  const EdgeStream s1 = assemble_stream(inst, 1234);
  const EdgeStream s2 = assemble_stream(inst, 1234);
  CHECK(s1.edges == s2.edges);
  const EdgeStream s3 = assemble_stream(inst, 4321);
  CHECK(s1.edges != s3.edges);  // different order, same multiset

  std::vector<Edge> sorted1 = s1.edges;
  std::sort(sorted1.begin(), sorted1.end());
  std::vector<Edge> all = inst.phase1a;
  all.insert(all.end(), inst.phase1b.begin(), inst.phase1b.end());
  all.insert(all.end(), inst.phase2.begin(), inst.phase2.end());
  std::sort(all.begin(), all.end());
  CHECK(sorted1 == all);

  // Phase prefix property: no phase-2 edge before the second boundary.
  std::set<Edge> phase2(inst.phase2.begin(), inst.phase2.end());
  for (std::size_t i = 0; i < s1.phase1b_end; ++i) {
    CHECK_FALSE(phase2.count(s1.edges[i]));
  }
}

TEST_CASE("golden file for the smallest instance") {
  GameParams p;
  p.n1 = 1;
  p.r1 = 1;
  p.t1 = 1;
  p.n2 = 1;
  p.r2 = 1;
  p.t2 = 1;
  p.k = 1;
  p.delta = 0.0;
  p.seed = 1;
  const GameInstance inst =
      sample_instance(p, disjoint_blocks_rs(1, 1), disjoint_blocks_rs(1, 1));
  std::ostringstream out;
  write_instance(out, inst);

  // Fully hand-checkable: one hidden edge, crossed routing forced by the
  // parity target, no pads, one anchor per side.
  const std::string golden =
      "PARAMS\nversion hmlab-1\nn1 1\nr1 1\nt1 1\nn2 1\nr2 1\nt2 1\nk 1\n"
      "delta 0\nseed 1\n"
      "RS1\nrsgraph 1 1 1\nmatching 1\n0 0\n"
      "RS2\nrsgraph 1 1 1\nmatching 1\n0 0\n"
      "AUG_L\nindex 1\nbitmatrix 1 1\n1\nfamily 1 1\n0\nends 0\n"
      "AUG_R\nindex 1\nbitmatrix 1 1\n1\nfamily 1 1\n0\nends 0\n"
      "PHASE1_A\nedges 1\n2 3\n"
      "PHASE1_B\nedges 4\n0 1\n1 0\n3 5\n4 4\n"
      "PHASE2\nedges 4\n0 2\n2 0\n3 3\n5 4\n"
      "HIDDEN\nindex 1\nsurvivors 1\n2 3\n"
      "MAPS\naug_left_width 2\naug_right_width 3\n"
      "link_left 1\n2 0\nlink_right 1\n3 3\nEND\n";
  CHECK(out.str() == golden);
  CHECK(verify_instance(inst).valid());
  CHECK(certified_large_matching(inst).size() == 5);  // n - r1 at zero drop
  CHECK(max_matching_avoiding_hidden(inst).max_matching_size <= 4);
}

TEST_CASE("instance file round trip is byte stable") {
  const GameInstance inst = small_instance(77);
  std::stringstream first;
  write_instance(first, inst);
  std::stringstream second(first.str());
  const GameInstance back = read_instance(second);
  CHECK(verify_instance(back).valid());

  std::stringstream rewritten;
  write_instance(rewritten, back);
  CHECK(rewritten.str() == first.str());
}

TEST_CASE("verify_instance flags a tampered instance") {
  GameInstance inst = small_instance(5);
  REQUIRE(verify_instance(inst).valid());
  inst.phase2.pop_back();
  const InstanceReport report = verify_instance(inst);
  CHECK_FALSE(report.valid());

  GameInstance other = small_instance(5);
  other.hidden_survivors.pop_back();
  CHECK_FALSE(verify_instance(other).valid());
}

TEST_CASE("resampling the drop mask changes only the core graph") {
  const GameParams p = wide_params(55);
  const RSGraph rs1 = disjoint_blocks_rs(10, 2);
  const RSGraph rs2 = disjoint_blocks_rs(50, 2);
  const GameInstance a = sample_instance(p, rs1, rs2, 111);
  const GameInstance b = sample_instance(p, rs1, rs2, 222);
  CHECK(a.hidden_index == b.hidden_index);
  CHECK(a.phase1b == b.phase1b);
  CHECK(a.phase2 == b.phase2);
  CHECK(a.phase1a != b.phase1a);  // different drop pattern (seeds differ)
}
