#include "hmlab/rs.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hmlab {

std::string RsReport::to_string() const {
  if (valid()) return "valid";
  std::string s;
  for (const auto& v : violations) {
    s += v;
    s += '\n';
  }
  return s;
}

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.left) + "," + std::to_string(e.right) + ")";
}

}  // namespace

RsReport verify_rs(const RSGraph& c) {
  RsReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (c.graph.left_count() != c.graph.right_count()) {
    fail("sides differ: " + std::to_string(c.graph.left_count()) + " vs " +
         std::to_string(c.graph.right_count()));
  }
  if (static_cast<int>(c.matchings.size()) != c.t) {
    fail("matching count " + std::to_string(c.matchings.size()) + " != t=" + std::to_string(c.t));
  }

  // Partition: matchings are disjoint and their union is the edge set.
  std::vector<Edge> pooled;
  for (std::size_t j = 0; j < c.matchings.size(); ++j) {
    const Matching& m = c.matchings[j];
    if (static_cast<int>(m.size()) != c.r) {
      fail("matching " + std::to_string(j + 1) + " has " + std::to_string(m.size()) +
           " edges, expected r=" + std::to_string(c.r));
    }
    for (const Edge& e : m.edges()) {
      if (!c.graph.has_edge(e)) {
        fail("matching " + std::to_string(j + 1) + " edge " + edge_str(e) + " not in graph");
      }
      pooled.push_back(e);
    }
  }
  std::sort(pooled.begin(), pooled.end());
  for (std::size_t i = 1; i < pooled.size(); ++i) {
    if (pooled[i] == pooled[i - 1]) {
      fail("edge " + edge_str(pooled[i]) + " appears in two matchings");
    }
  }
  if (pooled.size() != c.graph.edge_count() ||
      !std::equal(pooled.begin(), pooled.end(), c.graph.edges().begin(), c.graph.edges().end())) {
    for (const Edge& e : c.graph.edges()) {
      if (!std::binary_search(pooled.begin(), pooled.end(), e)) {
        fail("graph edge " + edge_str(e) + " not covered by any matching");
      }
    }
    if (pooled.size() > c.graph.edge_count()) {
      fail("matchings list more edges than the graph has");
    }
  }

  // Induced-ness, with a witness edge per violation.
  for (std::size_t j = 0; j < c.matchings.size(); ++j) {
    const Matching& m = c.matchings[j];
    std::vector<bool> in_left(c.graph.left_count(), false), in_right(c.graph.right_count(), false);
    bool in_range = true;
    for (const Edge& e : m.edges()) {
      if (e.left < 0 || e.left >= c.graph.left_count() || e.right < 0 ||
          e.right >= c.graph.right_count()) {
        fail("matching " + std::to_string(j + 1) + " edge " + edge_str(e) + " out of range");
        in_range = false;
      }
    }
    if (!in_range) continue;
    for (const Edge& e : m.edges()) {
      in_left[e.left] = true;
      in_right[e.right] = true;
    }
    for (const Edge& e : c.graph.edges()) {
      if (in_left[e.left] && in_right[e.right] && !m.contains(e)) {
        fail("matching " + std::to_string(j + 1) + " not induced: witness edge " + edge_str(e));
      }
    }
  }
  return report;
}

RSGraph disjoint_blocks_rs(int r, int t) {
  if (r < 1 || t < 1) throw std::invalid_argument("disjoint_blocks_rs: r and t must be >= 1");
  if (static_cast<std::int64_t>(r) * t > 50'000'000) {
    throw std::invalid_argument("disjoint_blocks_rs: r*t too large");
  }
  const int n = r * t;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n));
  std::vector<Matching> matchings;
  matchings.reserve(t);
  for (int j = 0; j < t; ++j) {
    std::vector<Edge> block(r);
    for (int i = 0; i < r; ++i) block[i] = {j * r + i, j * r + i};
    edges.insert(edges.end(), block.begin(), block.end());
    matchings.emplace_back(std::move(block));
  }
  return RSGraph{BipartiteGraph(n, n, std::move(edges)), std::move(matchings), r, t};
}

bool is_three_ap_free(const std::vector<int>& members) {
  std::vector<int> s = members;
  std::sort(s.begin(), s.end());
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const int z = 2 * s[b] - s[a];
      if (z > s[b] && std::binary_search(s.begin() + b + 1, s.end(), z)) return false;
    }
  }
  return true;
}

namespace {

// Largest 3-AP-free extension of `chosen` using values > last, by DFS
// with a simple size bound.
int max_extension(const std::vector<int>& chosen, int from, int k_max, int best_so_far) {
  int best = 0;
  for (int v = from; v <= k_max; ++v) {
    if (static_cast<int>(k_max - v + 1) <= best) break;  // cannot beat current best
    bool ok = true;
    for (std::size_t b = 0; b < chosen.size() && ok; ++b) {
      // v would close an AP (x, y, v) with x, y already chosen.
      for (std::size_t a = 0; a <= b && ok; ++a) {
        if (chosen[a] + v == 2 * chosen[b]) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<int> next = chosen;
    next.push_back(v);
    best = std::max(best, 1 + max_extension(next, v + 1, k_max, best_so_far));
  }
  return best;
}

}  // namespace

APFreeSet brute_force_ap_free(int k_max) {
  if (k_max < 1 || k_max > 24) throw std::invalid_argument("brute_force_ap_free: k_max must be in [1, 24]");
  const int target = max_extension({}, 1, k_max, 0);
  // Commit greedily to the smallest element at each position that still
  // allows completing to the maximum size: this is the lexicographically
  // least maximum set.
  std::vector<int> chosen;
  int from = 1;
  while (static_cast<int>(chosen.size()) < target) {
    for (int v = from; v <= k_max; ++v) {
      bool ok = true;
      for (std::size_t b = 0; b < chosen.size() && ok; ++b) {
        for (std::size_t a = 0; a <= b && ok; ++a) {
          if (chosen[a] + v == 2 * chosen[b]) ok = false;
        }
      }
      if (!ok) continue;
      std::vector<int> next = chosen;
      next.push_back(v);
      if (static_cast<int>(next.size()) + max_extension(next, v + 1, k_max, 0) >= target) {
        chosen = std::move(next);
        from = v + 1;
        break;
      }
    }
  }
  return APFreeSet{k_max, std::move(chosen)};
}

APFreeSet behrend_ap_free(int k_max) {
  if (k_max < 2) throw std::invalid_argument("behrend_ap_free: k_max must be >= 2");
  std::vector<int> best = {1, 2};  // always 3-AP-free
  for (int d = 2; 2 * d - 1 <= k_max + 1; ++d) {
    const int base = 2 * d - 1;
    std::map<std::int64_t, std::vector<int>> shells;
    for (int v = 1; v <= k_max; ++v) {
      std::int64_t norm = 0;
      bool digits_ok = true;
      for (int x = v; x > 0; x /= base) {
        const int digit = x % base;
        if (digit >= d) {
          digits_ok = false;
          break;
        }
        norm += static_cast<std::int64_t>(digit) * digit;
      }
      if (digits_ok) shells[norm].push_back(v);
    }
    for (const auto& [norm, members] : shells) {
      if (members.size() > best.size()) best = members;
    }
    if (static_cast<std::int64_t>(base) * base > k_max) break;  // single-digit regime reached
  }
  APFreeSet out{k_max, std::move(best)};
  if (!is_three_ap_free(out.members)) {
    throw std::logic_error("behrend_ap_free: constructed set contains a 3-AP");
  }
  return out;
}

RSGraph ap_rs(int m, const APFreeSet& s) {
  if (m < 1) throw std::invalid_argument("ap_rs: m must be >= 1");
  if (s.members.empty()) throw std::invalid_argument("ap_rs: AP-free set must be nonempty");
  if (!is_three_ap_free(s.members)) throw std::invalid_argument("ap_rs: set contains a 3-AP");
  const int max_s = s.members.back();
  const int n = m + 2 * max_s;
  std::vector<Edge> edges;
  std::vector<Matching> matchings;
  matchings.reserve(m);
  for (int x = 1; x <= m; ++x) {
    std::vector<Edge> block;
    block.reserve(s.members.size());
    for (int v : s.members) block.push_back({x + v - 1, x + 2 * v - 1});
    edges.insert(edges.end(), block.begin(), block.end());
    matchings.emplace_back(std::move(block));
  }
  RSGraph out{BipartiteGraph(n, n, std::move(edges)), std::move(matchings),
              static_cast<int>(s.members.size()), m};
  return out;
}

BipartiteGraph bipartite_double_cover(int vertex_count, const std::vector<Edge>& edges) {
  std::vector<Edge> covered;
  covered.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.left == e.right) throw std::invalid_argument("bipartite_double_cover: self loop");
    covered.push_back({e.left, e.right});
    covered.push_back({e.right, e.left});
  }
  return BipartiteGraph(vertex_count, vertex_count, std::move(covered));
}

RSGraph bipartite_double_cover_rs(int vertex_count,
                                  const std::vector<std::vector<Edge>>& matchings) {
  std::vector<Edge> all;
  std::vector<Matching> covered;
  covered.reserve(matchings.size());
  int r = -1;
  for (const auto& m : matchings) {
    std::vector<Edge> block;
    block.reserve(m.size() * 2);
    for (const Edge& e : m) {
      if (e.left == e.right) throw std::invalid_argument("bipartite_double_cover_rs: self loop");
      block.push_back({e.left, e.right});
      block.push_back({e.right, e.left});
    }
    all.insert(all.end(), block.begin(), block.end());
    if (r < 0) r = static_cast<int>(block.size());
    covered.emplace_back(std::move(block));
  }
  const int t = static_cast<int>(covered.size());
  return RSGraph{BipartiteGraph(vertex_count, vertex_count, std::move(all)), std::move(covered),
                 r < 0 ? 0 : r, t};
}

void write_rs(std::ostream& out, const RSGraph& g) {
  out << "rsgraph " << g.n() << ' ' << g.r << ' ' << g.t << '\n';
  for (int j = 0; j < g.t; ++j) {
    out << "matching " << (j + 1) << '\n';
    for (const Edge& e : g.matchings[j].edges()) out << e.left << ' ' << e.right << '\n';
  }
}

RSGraph read_rs(std::istream& in) {
  std::string tag;
  int n = 0, r = 0, t = 0;
  if (!(in >> tag >> n >> r >> t) || tag != "rsgraph") {
    throw std::runtime_error("rs file: expected 'rsgraph <n> <r> <t>' header");
  }
  std::vector<Edge> edges;
  std::vector<Matching> matchings;
  matchings.reserve(t);
  for (int j = 0; j < t; ++j) {
    int label = 0;
    if (!(in >> tag >> label) || tag != "matching" || label != j + 1) {
      throw std::runtime_error("rs file: expected 'matching " + std::to_string(j + 1) + "'");
    }
    std::vector<Edge> block(r);
    for (int i = 0; i < r; ++i) {
      if (!(in >> block[i].left >> block[i].right)) {
        throw std::runtime_error("rs file: truncated matching " + std::to_string(j + 1));
      }
    }
    edges.insert(edges.end(), block.begin(), block.end());
    matchings.emplace_back(std::move(block));
  }
  return RSGraph{BipartiteGraph(n, n, std::move(edges)), std::move(matchings), r, t};
}

}  // namespace hmlab
