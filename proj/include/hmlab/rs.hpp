#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hmlab/graph.hpp"

namespace hmlab {

// A bipartite graph with equal sides whose edge set is partitioned into
// t induced matchings of size r. The matching list order is part of the
// object: position j is the index other modules (bit matrices, the game)
// refer to, so it is serialized verbatim.
struct RSGraph {
  BipartiteGraph graph;             // left_count == right_count == n
  std::vector<Matching> matchings;  // t matchings of r edges each
  int r = 0;
  int t = 0;
  int n() const { return graph.left_count(); }
};

struct RsReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks every RSGraph invariant and reports all violations with
// witnesses (a failing edge, a wrong size). Never throws: a broken
// candidate is an answer, not an error.
RsReport verify_rs(const RSGraph& c);

// Simplest valid family: matching j lives on its own block of r vertices
// per side, so n = r * t and induced-ness is vertex disjointness.
RSGraph disjoint_blocks_rs(int r, int t);

// Subset of [1, k_max] with no three members x < y < z with x + z == 2y.
struct APFreeSet {
  int universe_bound = 0;
  std::vector<int> members;  // ascending
};

bool is_three_ap_free(const std::vector<int>& members);

// Exhaustive maximum 3-AP-free subset, lexicographically least among the
// maximum ones. Oracle for behrend_ap_free; k_max is capped at 24.
APFreeSet brute_force_ap_free(int k_max);

// Behrend-style construction: write each integer in base 2d-1 with all
// digits < d and bucket by squared digit norm; every bucket is 3-AP-free
// (no carries, so an arithmetic progression would force equality in the
// norm parallelogram identity). Scans d and returns the largest bucket.
APFreeSet behrend_ap_free(int k_max);

// Classical AP-free-set construction: vertices [1, m + 2*max(S)] per
// side, matching x = {(x+s, x+2s) : s in S} for x in [1, m], giving an
// (|S|, m)-RS graph. Ids in the result are 0-based (vertex v -> v-1).
RSGraph ap_rs(int m, const APFreeSet& s);

// Bipartite double cover of a general simple graph given as an edge list
// over [0, vertex_count): edge (u,v) maps to (u_left, v_right) and
// (v_left, u_right).
BipartiteGraph bipartite_double_cover(int vertex_count, const std::vector<Edge>& edges);

// Double cover that also transports a matching partition, turning a
// non-bipartite (r,t)-RS graph into a bipartite (2r,t)-RS graph.
RSGraph bipartite_double_cover_rs(int vertex_count, const std::vector<std::vector<Edge>>& matchings);

// File format: "rsgraph <n> <r> <t>" header, then for each j in [1, t]
// a "matching <j>" line followed by r "u v" lines.
void write_rs(std::ostream& out, const RSGraph& g);
RSGraph read_rs(std::istream& in);

}  // namespace hmlab
