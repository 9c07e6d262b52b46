#include "hmlab/augmentation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace hmlab {

namespace {

// Host left vertex -> index of its edge within matching j (the bit row).
std::map<int, int> row_of_left_vertex(const RSGraph& host, int j) {
  if (j < 0 || j >= host.t) {
    throw std::out_of_range("matching index " + std::to_string(j) + " outside [0, " +
                            std::to_string(host.t) + ")");
  }
  std::map<int, int> row;
  const auto& edges = host.matchings[j].edges();
  for (std::size_t i = 0; i < edges.size(); ++i) row[edges[i].left] = static_cast<int>(i);
  return row;
}

int partner_of(const RSGraph& host, int j, int left) {
  for (const Edge& e : host.matchings[j].edges()) {
    if (e.left == left) return e.right;
  }
  throw std::invalid_argument("vertex " + std::to_string(left) + " not in the left side of matching " +
                              std::to_string(j + 1));
}

}  // namespace

void validate_family(const RSGraph& host, const SequenceFamily& family, double slack) {
  const auto row = row_of_left_vertex(host, family.j);
  std::set<int> seen;
  for (const auto& seq : family.sequences) {
    if (static_cast<int>(seq.size()) != family.k) {
      throw std::invalid_argument("sequence family: sequence of length " +
                                  std::to_string(seq.size()) + ", expected k=" +
                                  std::to_string(family.k));
    }
    for (int u : seq) {
      if (!row.count(u)) {
        throw std::invalid_argument("sequence family: vertex " + std::to_string(u) +
                                    " is not matched by matching " + std::to_string(family.j + 1));
      }
      if (!seen.insert(u).second) {
        throw std::invalid_argument("sequence family: vertex " + std::to_string(u) + " reused");
      }
    }
  }
  const double used = static_cast<double>(family.k) * static_cast<double>(family.size());
  if (used > (1.0 - slack) * host.r + 1e-9) {
    throw std::invalid_argument("sequence family: k*ell = " + std::to_string(family.k * family.size()) +
                                " exceeds (1-slack)*r = " + std::to_string((1.0 - slack) * host.r));
  }
}

std::vector<Edge> augmenting_edges(const EncodedRs& encoded, int j, const std::vector<int>& seq) {
  const RSGraph& host = encoded.host();
  std::vector<Edge> out;
  if (seq.empty()) return out;
  std::vector<int> partners(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) partners[i] = partner_of(host, j, seq[i]);
  out.reserve(2 * (seq.size() - 1));
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const int v = partners[i];
    const int u_next = seq[i + 1];
    out.push_back({encoded.rep_a(u_next), encoded.rep_a(v)});
    out.push_back({encoded.rep_b(u_next), encoded.rep_b(v)});
  }
  for (const Edge& e : out) {
    if (encoded.graph().has_edge(e)) {
      throw std::logic_error("augmenting edge already present in encoded graph");
    }
  }
  return out;
}

bool parity_ends_at_a(const std::vector<std::uint8_t>& column_bits) {
  std::uint8_t x = 0;
  for (std::uint8_t b : column_bits) x ^= (b & 1);
  return x == 0;
}

AugPath augmenting_path(const EncodedRs& encoded, int j, const std::vector<int>& seq) {
  const RSGraph& host = encoded.host();
  const auto row = row_of_left_vertex(host, j);
  if (seq.empty()) throw std::invalid_argument("augmenting_path: empty sequence");

  AugPath path;
  path.start = encoded.rep_a(seq.front());
  bool on_b_track = false;  // XOR of routing bits so far
  for (std::size_t m = 0; m < seq.size(); ++m) {
    const auto it = row.find(seq[m]);
    if (it == row.end()) {
      throw std::invalid_argument("augmenting_path: vertex " + std::to_string(seq[m]) +
                                  " not in the left side of matching " + std::to_string(j + 1));
    }
    const int v = host.matchings[j].edges()[it->second].right;
    const int u_copy = on_b_track ? encoded.rep_b(seq[m]) : encoded.rep_a(seq[m]);
    const bool crossed = encoded.bits().get(it->second, j);
    on_b_track = on_b_track != crossed;
    const int v_copy = on_b_track ? encoded.rep_b(v) : encoded.rep_a(v);
    path.edges.push_back({u_copy, v_copy});
    path.end = v_copy;
    if (m + 1 < seq.size()) {
      const int u_next_copy = on_b_track ? encoded.rep_b(seq[m + 1]) : encoded.rep_a(seq[m + 1]);
      path.edges.push_back({u_next_copy, v_copy});
    }
  }
  path.ends_at_a = !on_b_track;
  return path;
}

std::vector<int> AugGraph::released_endpoints() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < designated_endpoint.size(); ++i) {
    if (path_ends_at_a[i]) out.push_back(designated_endpoint[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> AugGraph::retained_endpoints() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < designated_endpoint.size(); ++i) {
    if (!path_ends_at_a[i]) out.push_back(designated_endpoint[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AugGraph build_aug_graph(EncodedRs encoded, int j, SequenceFamily family, double slack) {
  const RSGraph& host = encoded.host();
  if (family.j != j) throw std::invalid_argument("build_aug_graph: family built for another matching");
  validate_family(host, family, slack);

  AugGraph a;
  a.j = j;
  const int n = host.n();
  const int r = host.r;
  const int ell = static_cast<int>(family.size());
  const int doubled = 2 * n;

  // Stitch edges and paths per sequence.
  std::vector<AugPath> paths;
  paths.reserve(family.size());
  for (const auto& seq : family.sequences) {
    auto stitches = augmenting_edges(encoded, j, seq);
    a.stitch_edges.insert(a.stitch_edges.end(), stitches.begin(), stitches.end());
    paths.push_back(augmenting_path(encoded, j, seq));
  }

  // Pad vertices: one per doubled vertex unmatched by the rep matching.
  std::vector<bool> left_matched(doubled, false), right_matched(doubled, false);
  for (const Edge& e : encoded.rep_matching(j).edges()) {
    left_matched[e.left] = true;
    right_matched[e.right] = true;
  }
  int next_pad_left = doubled;   // pads on the left side attach to right vertices
  int next_pad_right = doubled;  // pads on the right side attach to left vertices
  for (int u = 0; u < doubled; ++u) {
    if (!left_matched[u]) a.pad_matching.push_back({u, next_pad_right++});
  }
  for (int w = 0; w < doubled; ++w) {
    if (!right_matched[w]) a.pad_matching.push_back({next_pad_left++, w});
  }
  const int pads_per_side = 2 * (n - r);
  if (next_pad_right != doubled + pads_per_side || next_pad_left != doubled + pads_per_side) {
    throw std::logic_error("build_aug_graph: pad count mismatch");
  }

  // Anchor vertices: starts in ascending order, anchors in ascending order.
  std::vector<int> starts;
  starts.reserve(paths.size());
  for (const auto& p : paths) starts.push_back(p.start);
  std::sort(starts.begin(), starts.end());
  for (int i = 0; i < ell; ++i) {
    a.anchor_matching.push_back({starts[i], doubled + pads_per_side + i});
  }

  a.extra_edges = a.stitch_edges;
  a.extra_edges.insert(a.extra_edges.end(), a.pad_matching.begin(), a.pad_matching.end());
  a.extra_edges.insert(a.extra_edges.end(), a.anchor_matching.begin(), a.anchor_matching.end());
  std::sort(a.extra_edges.begin(), a.extra_edges.end());

  std::vector<Edge> all_edges = encoded.graph().edges();
  all_edges.insert(all_edges.end(), a.extra_edges.begin(), a.extra_edges.end());
  const int left_count = doubled + pads_per_side;
  const int right_count = doubled + pads_per_side + ell;
  a.graph = BipartiteGraph(left_count, right_count, std::move(all_edges));

  const auto row = row_of_left_vertex(host, j);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& seq = family.sequences[i];
    const int last_partner = partner_of(host, j, seq.back());
    a.designated_endpoint.push_back(encoded.rep_a(last_partner));
    a.path_ends_at_a.push_back(paths[i].ends_at_a ? 1 : 0);

    // The XOR rule and the traversal must agree edge for edge.
    std::vector<std::uint8_t> column_bits;
    for (int u : seq) column_bits.push_back(encoded.bits().get(row.at(u), j) ? 1 : 0);
    if (parity_ends_at_a(column_bits) != paths[i].ends_at_a) {
      throw std::logic_error("build_aug_graph: parity rule disagrees with traversal");
    }
  }

  const std::size_t expected = static_cast<std::size_t>(8) * n - 4 * r + ell;
  if (a.vertex_count() != expected) {
    throw std::logic_error("build_aug_graph: vertex count " + std::to_string(a.vertex_count()) +
                           " != " + std::to_string(expected));
  }

  a.encoded = std::move(encoded);
  a.family = std::move(family);
  return a;
}

Matching certified_matching(const AugGraph& a) {
  std::set<Edge> picked(a.encoded.rep_matching(a.j).edges().begin(),
                        a.encoded.rep_matching(a.j).edges().end());

  // Anchor map: path start -> anchor edge.
  std::map<int, Edge> anchor_of_start;
  for (const Edge& e : a.anchor_matching) anchor_of_start[e.left] = e;

  for (const auto& seq : a.family.sequences) {
    const AugPath path = augmenting_path(a.encoded, a.j, seq);
    // Alternating flip: drop the rep edges along the path, take the
    // anchor edge and the stitch edges. The path end becomes unmatched.
    for (std::size_t m = 0; m < path.edges.size(); ++m) {
      if (m % 2 == 0) {
        if (picked.erase(path.edges[m]) != 1) {
          throw std::logic_error("certified_matching: flip revisits a rep edge");
        }
      } else {
        if (!picked.insert(path.edges[m]).second) {
          throw std::logic_error("certified_matching: flip revisits a stitch edge");
        }
      }
    }
    picked.insert(anchor_of_start.at(path.start));
  }
  picked.insert(a.pad_matching.begin(), a.pad_matching.end());

  Matching result(std::vector<Edge>(picked.begin(), picked.end()));
  const std::size_t expected = static_cast<std::size_t>(4) * a.encoded.host_n() - 2 * a.encoded.host().r;
  if (result.size() != expected) {
    throw std::logic_error("certified_matching: size " + std::to_string(result.size()) + " != " +
                           std::to_string(expected));
  }
  return result;
}

VertexCover certified_cover(const AugGraph& a) {
  const int doubled = 2 * a.encoded.host_n();
  std::vector<bool> left_matched(doubled, false), right_matched(doubled, false);
  for (const Edge& e : a.encoded.rep_matching(a.j).edges()) {
    left_matched[e.left] = true;
    right_matched[e.right] = true;
  }

  std::set<int> cover_left, cover_right;
  for (int u = 0; u < doubled; ++u) {
    if (!left_matched[u]) cover_left.insert(u);
  }
  for (int w = 0; w < doubled; ++w) {
    if (!right_matched[w]) cover_right.insert(w);
  }

  // Every other path vertex starting from the start covers the path and
  // misses the end; the leftover rep right vertices cover what remains.
  std::set<int> on_path_right;
  for (const auto& seq : a.family.sequences) {
    const AugPath path = augmenting_path(a.encoded, a.j, seq);
    // Path vertices alternate left, right, left, ... ; even positions
    // (start, every second) are the left-side ones.
    cover_left.insert(path.start);
    for (std::size_t m = 1; m < path.edges.size(); m += 2) {
      cover_left.insert(path.edges[m].left);
    }
    for (std::size_t m = 0; m < path.edges.size(); m += 2) {
      on_path_right.insert(path.edges[m].right);
    }
  }
  for (int w = 0; w < doubled; ++w) {
    if (right_matched[w] && !on_path_right.count(w)) cover_right.insert(w);
  }

  VertexCover cover{std::vector<int>(cover_left.begin(), cover_left.end()),
                    std::vector<int>(cover_right.begin(), cover_right.end())};
  const std::size_t expected = static_cast<std::size_t>(4) * a.encoded.host_n() - 2 * a.encoded.host().r;
  if (cover.size() != expected) {
    throw std::logic_error("certified_cover: size " + std::to_string(cover.size()) + " != " +
                           std::to_string(expected));
  }
  if (!is_vertex_cover(a.graph, cover)) {
    throw std::logic_error("certified_cover: an edge is uncovered");
  }
  return cover;
}

SequenceFamily sample_family(const RSGraph& host, int j, int k, int ell, Rng& rng) {
  std::vector<int> lefts;
  for (const Edge& e : host.matchings.at(j).edges()) lefts.push_back(e.left);
  std::sort(lefts.begin(), lefts.end());
  rng.shuffle(lefts);
  SequenceFamily family;
  family.j = j;
  family.k = k;
  family.sequences.reserve(ell);
  std::size_t pos = 0;
  for (int i = 0; i < ell; ++i) {
    family.sequences.emplace_back(lefts.begin() + pos, lefts.begin() + pos + k);
    pos += k;
  }
  return family;
}

BitMatrix sample_consistent_bits(const RSGraph& host, const SequenceFamily& family,
                                 const std::vector<std::uint8_t>& target, Rng& rng) {
  if (target.size() != family.size()) {
    throw std::invalid_argument("sample_consistent_bits: target length != family size");
  }
  BitMatrix bits(host.r, host.t);
  for (int i = 0; i < host.r; ++i) {
    for (int j = 0; j < host.t; ++j) bits.set(i, j, rng.bit());
  }
  // Force the last row of each sequence so the column XOR hits the target.
  const auto row = row_of_left_vertex(host, family.j);
  for (std::size_t i = 0; i < family.sequences.size(); ++i) {
    const auto& seq = family.sequences[i];
    std::uint8_t prefix = 0;
    for (std::size_t m = 0; m + 1 < seq.size(); ++m) {
      prefix ^= bits.get(row.at(seq[m]), family.j) ? 1 : 0;
    }
    bits.set(row.at(seq.back()), family.j, (prefix ^ (target[i] & 1)) != 0);
  }
  return bits;
}

AugGraph sample_aug_graph(const RSGraph& host, const std::vector<std::uint8_t>& target, int k,
                          Rng& rng, double slack) {
  const int ell = static_cast<int>(target.size());
  if (k < 1) throw std::invalid_argument("sample_aug_graph: k must be >= 1");
  if (static_cast<double>(k) * ell > (1.0 - slack) * host.r + 1e-9) {
    throw std::invalid_argument("sample_aug_graph: k*ell = " + std::to_string(k * ell) +
                                " exceeds (1-slack)*r = " + std::to_string((1.0 - slack) * host.r));
  }
  const int j = rng.below_int(host.t);
  SequenceFamily family = sample_family(host, j, k, ell, rng);
  BitMatrix bits = sample_consistent_bits(host, family, target, rng);
  AugGraph a = build_aug_graph(encode_rs(host, std::move(bits)), j, std::move(family), slack);

  for (std::size_t i = 0; i < target.size(); ++i) {
    if ((a.path_ends_at_a[i] != 0) != (target[i] == 0)) {
      throw std::logic_error("sample_aug_graph: endpoint side disagrees with target");
    }
  }
  return a;
}

}  // namespace hmlab
