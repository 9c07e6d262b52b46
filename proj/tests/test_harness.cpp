#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "hmlab/harness.hpp"

using namespace hmlab;

namespace {

EdgeStream plain_stream(std::vector<Edge> edges) {
  EdgeStream s;
  s.edges = std::move(edges);
  s.phase1a_end = s.edges.size();
  s.phase1b_end = s.edges.size();
  return s;
}

bool is_valid_matching(const std::vector<Edge>& edges) {
  std::set<int> lefts, rights;
  for (const Edge& e : edges) {
    if (!lefts.insert(e.left).second || !rights.insert(e.right).second) return false;
  }
  return true;
}

// Deliberately broken algorithm: remembers edges in a data member
// instead of the metered store.
class Smuggler final : public StreamingAlgorithm {
 public:
  std::string name() const override { return "smuggler"; }
  int passes() const override { return 1; }
  void begin(int, int, MeteredStore&) override {}
  void observe(const Edge& e, MeteredStore&) override { hoard_.push_back(e); }
  void end_pass(int, MeteredStore&) override {}
  std::vector<Edge> finish(const MeteredStore&) const override {
    return hoard_.empty() ? std::vector<Edge>{} : std::vector<Edge>{hoard_.front()};
  }

 private:
  std::vector<Edge> hoard_;
};

GameInstance harness_instance(std::uint64_t seed) {
  GameParams p;
  p.n1 = 6;
  p.r1 = 3;
  p.t1 = 2;
  p.n2 = 28;
  p.r2 = 14;
  p.t2 = 2;
  p.k = 2;
  p.delta = 0.1;
  p.seed = seed;
  return sample_instance(p, disjoint_blocks_rs(3, 2), disjoint_blocks_rs(14, 2));
}

}  // namespace

TEST_CASE("greedy on the three-edge example") {
  // Stream (a2,b1), (a1,b1), (a2,b2): greedy keeps only the first edge,
  // the optimum pairs both.
  const EdgeStream s = plain_stream({{1, 0}, {0, 0}, {1, 1}});
  const AlgorithmRun run = run_stream(greedy_matching(), s, 2, 1);
  CHECK(run.output == std::vector<Edge>{{1, 0}});
  CHECK_FALSE(run.non_streaming());

  const BipartiteGraph g(2, 2, {{0, 0}, {1, 0}, {1, 1}});
  CHECK(hopcroft_karp(g).size() == 2);
}

TEST_CASE("greedy outputs a perfect matching when the stream is one") {
  std::vector<Edge> edges;
  for (int i = 0; i < 8; ++i) edges.push_back({i, 7 - i});
  const AlgorithmRun run = run_stream(greedy_matching(), plain_stream(edges), 8, 1);
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  CHECK(run.output == sorted);
}

TEST_CASE("two-pass augmentation fixes the three-edge example") {
  const EdgeStream s = plain_stream({{1, 0}, {0, 0}, {1, 1}});
  const AlgorithmRun run = run_stream(two_pass_augment(), s, 2, 2);
  CHECK(run.output.size() == 2);
  CHECK(is_valid_matching(run.output));
  CHECK_FALSE(run.non_streaming());
}

TEST_CASE("two-pass leaves an already perfect matching alone") {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) edges.push_back({i, i});
  const AlgorithmRun run = run_stream(two_pass_augment(), plain_stream(edges), 5, 2);
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  CHECK(run.output == sorted);
}

TEST_CASE("identical runs are identical") {
  const GameInstance inst = harness_instance(1);
  const EdgeStream stream = assemble_stream(inst, 99);
  const AlgorithmRun a = run_stream(greedy_matching(), stream, inst.n(), 1);
  const AlgorithmRun b = run_stream(greedy_matching(), stream, inst.n(), 1);
  CHECK(a.output == b.output);
  CHECK(a.peak_stored_words == b.peak_stored_words);
  CHECK(a.snapshots.size() == b.snapshots.size());
}

TEST_CASE("greedy snapshots grow monotonically within a pass") {
  const GameInstance inst = harness_instance(2);
  const EdgeStream stream = assemble_stream(inst, 5);
  const AlgorithmRun run = run_stream(greedy_matching(), stream, inst.n(), 1);
  REQUIRE(run.snapshots.size() == 3);
  CHECK(run.snapshots[0].stored_edges <= run.snapshots[1].stored_edges);
  CHECK(run.snapshots[1].stored_edges <= run.snapshots[2].stored_edges);
  CHECK(run.peak_stored_edges <= static_cast<std::size_t>(inst.n()));
}

TEST_CASE("the audit catches state smuggled past the store") {
  const EdgeStream s = plain_stream({{0, 0}, {1, 1}, {2, 2}});
  const AlgorithmRun run =
      run_stream([] { return std::make_unique<Smuggler>(); }, s, 3, 1);
  CHECK_FALSE(run.audit_ok);
  CHECK(run.non_streaming());
}

TEST_CASE("baselines on sampled instances") {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    const GameInstance inst = harness_instance(seed);
    const EdgeStream stream = assemble_stream(inst, seed + 1000);
    const BipartiteGraph whole = inst.union_graph();
    const std::size_t optimum = hopcroft_karp(whole).size();

    const AlgorithmRun greedy = run_stream(greedy_matching(), stream, inst.n(), 1);
    CHECK(is_valid_matching(greedy.output));
    CHECK_FALSE(greedy.non_streaming());
    CHECK(2 * greedy.output.size() >= optimum);
    for (const Edge& e : greedy.output) CHECK(whole.has_edge(e));

    const AlgorithmRun two = run_stream(two_pass_augment(), stream, inst.n(), 2);
    CHECK(is_valid_matching(two.output));
    CHECK_FALSE(two.non_streaming());
    CHECK(two.output.size() >= greedy.output.size());

    const AlgorithmRun seer = run_stream(clairvoyant(inst), stream, inst.n(), 2);
    CHECK(is_valid_matching(seer.output));
    CHECK_FALSE(seer.non_streaming());
    CHECK(evaluate_output(inst, hidden_filter(inst, seer.output)) ==
          static_cast<int>(inst.hidden_survivors.size()));
    CHECK(static_cast<int>(seer.output.size()) ==
          inst.n() - 2 * inst.params.r1 + static_cast<int>(inst.hidden_survivors.size()));
    CHECK(seer.peak_stored_edges <= static_cast<std::size_t>(3 * inst.n()));
  }
}

TEST_CASE("clairvoyant on an undropped instance reaches n - r1") {
  GameParams p;
  p.n1 = 6;
  p.r1 = 3;
  p.t1 = 2;
  p.n2 = 28;
  p.r2 = 14;
  p.t2 = 2;
  p.k = 2;
  p.delta = 0.0;
  p.seed = 4242;
  const GameInstance inst =
      sample_instance(p, disjoint_blocks_rs(3, 2), disjoint_blocks_rs(14, 2));
  REQUIRE(inst.hidden_survivors.size() == 3);
  const EdgeStream stream = assemble_stream(inst, 1);
  const AlgorithmRun seer = run_stream(clairvoyant(inst), stream, inst.n(), 2);
  CHECK(is_valid_matching(seer.output));
  CHECK(static_cast<int>(seer.output.size()) >= inst.n() - p.r1);
}

TEST_CASE("pass count is validated") {
  const EdgeStream s = plain_stream({{0, 0}});
  CHECK_THROWS_AS(run_stream(greedy_matching(), s, 1, 3), std::invalid_argument);
}
