#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace hmlab {

struct Edge {
  int left = 0;
  int right = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple bipartite graph over dense 0-based vertex ids. Edges are kept
// sorted in ascending lexicographic order and duplicates are rejected at
// construction: every graph in this project is simple by type.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(int left_count, int right_count, std::vector<Edge> edges);

  int left_count() const { return left_count_; }
  int right_count() const { return right_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool has_edge(const Edge& e) const;

 private:
  int left_count_ = 0;
  int right_count_ = 0;
  std::vector<Edge> edges_;  // ascending, unique
};

// A set of edges no two of which share an endpoint. Construction enforces
// the matching property; membership in a host graph is a separate check.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> edges);

  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool contains(const Edge& e) const;
  bool contained_in(const BipartiteGraph& g) const;

 private:
  std::vector<Edge> edges_;  // ascending, unique
};

struct VertexCover {
  std::vector<int> left_ids;   // sorted, unique
  std::vector<int> right_ids;  // sorted, unique
  std::size_t size() const { return left_ids.size() + right_ids.size(); }
};

// Exact maximum-cardinality matching. Deterministic: BFS/DFS scan
// neighbors in ascending id order, so the returned matching (not just its
// size) is a pure function of the graph.
Matching hopcroft_karp(const BipartiteGraph& g);

// Minimum vertex cover from a maximum matching via Koenig's alternating
// reachability construction; |cover| == |m|. Throws std::invalid_argument
// if the construction uncovers an edge, which happens exactly when m is
// not maximum.
VertexCover konig_vertex_cover(const BipartiteGraph& g, const Matching& m);

// True iff the subgraph induced on the matched vertices is m itself.
// Precondition violations (m not inside g) throw; a false verdict is a
// legitimate answer, not an error.
bool is_induced_matching(const BipartiteGraph& g, const Matching& m);

bool is_vertex_cover(const BipartiteGraph& g, const VertexCover& c);

// Text format: "bipartite <left_count> <right_count> <edge_count>" then
// one "u v" line per edge in ascending lexicographic order.
void write_graph(std::ostream& out, const BipartiteGraph& g);
BipartiteGraph read_graph(std::istream& in);

}  // namespace hmlab
