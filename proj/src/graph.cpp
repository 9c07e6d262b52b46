#include "hmlab/graph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hmlab {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.left) + "," + std::to_string(e.right) + ")";
}

}  // namespace

BipartiteGraph::BipartiteGraph(int left_count, int right_count, std::vector<Edge> edges)
    : left_count_(left_count), right_count_(right_count), edges_(std::move(edges)) {
  if (left_count < 0 || right_count < 0) {
    throw std::invalid_argument("bipartite graph: negative side size");
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.left < 0 || e.left >= left_count_ || e.right < 0 || e.right >= right_count_) {
      throw std::invalid_argument("bipartite graph: edge " + edge_str(e) + " out of range");
    }
    if (i > 0 && edges_[i - 1] == e) {
      throw std::invalid_argument("bipartite graph: duplicate edge " + edge_str(e));
    }
  }
}

bool BipartiteGraph::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  std::vector<int> lefts, rights;
  lefts.reserve(edges_.size());
  rights.reserve(edges_.size());
  for (const Edge& e : edges_) {
    lefts.push_back(e.left);
    rights.push_back(e.right);
  }
  std::sort(lefts.begin(), lefts.end());
  std::sort(rights.begin(), rights.end());
  if (std::adjacent_find(lefts.begin(), lefts.end()) != lefts.end() ||
      std::adjacent_find(rights.begin(), rights.end()) != rights.end()) {
    throw std::invalid_argument("matching: two edges share an endpoint");
  }
}

bool Matching::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool Matching::contained_in(const BipartiteGraph& g) const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) { return g.has_edge(e); });
}

namespace {

// Adjacency lists with neighbors in ascending order; Edge lists are
// already sorted, so a single pass fills them in order.
std::vector<std::vector<int>> adjacency(const BipartiteGraph& g) {
  std::vector<std::vector<int>> adj(g.left_count());
  for (const Edge& e : g.edges()) adj[e.left].push_back(e.right);
  return adj;
}

constexpr int kUnmatched = -1;

struct HkState {
  const std::vector<std::vector<int>>& adj;
  std::vector<int>& match_left;
  std::vector<int>& match_right;
  std::vector<int> dist;
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    std::queue<int> q;
    dist.assign(adj.size(), kInf);
    for (int u = 0; u < static_cast<int>(adj.size()); ++u) {
      if (match_left[u] == kUnmatched) {
        dist[u] = 0;
        q.push(u);
      }
    }
    int goal = kInf;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (dist[u] >= goal) continue;
      for (int v : adj[u]) {
        int w = match_right[v];
        if (w == kUnmatched) {
          goal = std::min(goal, dist[u] + 1);
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return goal != kInf;
  }

  bool dfs(int u) {
    for (int v : adj[u]) {
      int w = match_right[v];
      if (w == kUnmatched || (dist[w] == dist[u] + 1 && dfs(w))) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  }
};

}  // namespace

Matching hopcroft_karp(const BipartiteGraph& g) {
  const auto adj = adjacency(g);
  std::vector<int> match_left(g.left_count(), kUnmatched);
  std::vector<int> match_right(g.right_count(), kUnmatched);
  HkState state{adj, match_left, match_right, {}};
  while (state.bfs()) {
    for (int u = 0; u < g.left_count(); ++u) {
      if (match_left[u] == kUnmatched) state.dfs(u);
    }
  }
  std::vector<Edge> edges;
  for (int u = 0; u < g.left_count(); ++u) {
    if (match_left[u] != kUnmatched) edges.push_back({u, match_left[u]});
  }
  return Matching(std::move(edges));
}

VertexCover konig_vertex_cover(const BipartiteGraph& g, const Matching& m) {
  if (!m.contained_in(g)) {
    throw std::invalid_argument("konig_vertex_cover: matching not contained in graph");
  }
  std::vector<int> match_left(g.left_count(), kUnmatched);
  std::vector<int> match_right(g.right_count(), kUnmatched);
  for (const Edge& e : m.edges()) {
    match_left[e.left] = e.right;
    match_right[e.right] = e.left;
  }

  // Alternating BFS from unmatched left vertices: non-matching edges
  // left-to-right, matching edges right-to-left.
  const auto adj = adjacency(g);
  std::vector<bool> seen_left(g.left_count(), false), seen_right(g.right_count(), false);
  std::queue<int> q;
  for (int u = 0; u < g.left_count(); ++u) {
    if (match_left[u] == kUnmatched) {
      seen_left[u] = true;
      q.push(u);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (match_left[u] == v || seen_right[v]) continue;
      seen_right[v] = true;
      int w = match_right[v];
      if (w != kUnmatched && !seen_left[w]) {
        seen_left[w] = true;
        q.push(w);
      }
    }
  }

  VertexCover cover;
  for (int u = 0; u < g.left_count(); ++u) {
    if (!seen_left[u] && match_left[u] != kUnmatched) cover.left_ids.push_back(u);
  }
  for (int v = 0; v < g.right_count(); ++v) {
    if (seen_right[v]) cover.right_ids.push_back(v);
  }

  for (const Edge& e : g.edges()) {
    if (!std::binary_search(cover.left_ids.begin(), cover.left_ids.end(), e.left) &&
        !std::binary_search(cover.right_ids.begin(), cover.right_ids.end(), e.right)) {
      throw std::invalid_argument("konig_vertex_cover: edge " + edge_str(e) +
                                  " uncovered; matching is not maximum");
    }
  }
  if (cover.size() != m.size()) {
    throw std::invalid_argument("konig_vertex_cover: cover size " + std::to_string(cover.size()) +
                                " != matching size; matching is not maximum");
  }
  return cover;
}

bool is_induced_matching(const BipartiteGraph& g, const Matching& m) {
  if (!m.contained_in(g)) {
    throw std::invalid_argument("is_induced_matching: matching not contained in graph");
  }
  std::vector<bool> in_left(g.left_count(), false), in_right(g.right_count(), false);
  for (const Edge& e : m.edges()) {
    in_left[e.left] = true;
    in_right[e.right] = true;
  }
  for (const Edge& e : g.edges()) {
    if (in_left[e.left] && in_right[e.right] && !m.contains(e)) return false;
  }
  return true;
}

bool is_vertex_cover(const BipartiteGraph& g, const VertexCover& c) {
  for (int u : c.left_ids) {
    if (u < 0 || u >= g.left_count()) throw std::invalid_argument("is_vertex_cover: left id out of range");
  }
  for (int v : c.right_ids) {
    if (v < 0 || v >= g.right_count()) throw std::invalid_argument("is_vertex_cover: right id out of range");
  }
  std::vector<bool> in_left(g.left_count(), false), in_right(g.right_count(), false);
  for (int u : c.left_ids) in_left[u] = true;
  for (int v : c.right_ids) in_right[v] = true;
  for (const Edge& e : g.edges()) {
    if (!in_left[e.left] && !in_right[e.right]) return false;
  }
  return true;
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "bipartite " << g.left_count() << ' ' << g.right_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.left << ' ' << e.right << '\n';
}

BipartiteGraph read_graph(std::istream& in) {
  std::string tag;
  int lc = 0, rc = 0;
  std::size_t ec = 0;
  if (!(in >> tag >> lc >> rc >> ec) || tag != "bipartite") {
    throw std::runtime_error("graph file: expected 'bipartite <l> <r> <edges>' header");
  }
  std::vector<Edge> edges(ec);
  for (std::size_t i = 0; i < ec; ++i) {
    if (!(in >> edges[i].left >> edges[i].right)) {
      throw std::runtime_error("graph file: truncated edge list at line " + std::to_string(i + 2));
    }
  }
  return BipartiteGraph(lc, rc, std::move(edges));
}

}  // namespace hmlab
