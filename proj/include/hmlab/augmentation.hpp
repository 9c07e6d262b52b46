#pragma once

#include <cstdint>
#include <vector>

#include "hmlab/encoded.hpp"
#include "hmlab/rng.hpp"

namespace hmlab {

// Default cap on how much of a matching a sequence family may consume:
// k * ell <= (1 - kDefaultSlack) * r.
inline constexpr double kDefaultSlack = 0.1;

// An ordered list of ell pairwise vertex-disjoint k-sequences of left
// host vertices of matching j. Position i in the list is meaningful:
// samplers tie it to the i-th target parity bit.
struct SequenceFamily {
  int j = 0;                               // host matching index
  int k = 0;                               // sequence length
  std::vector<std::vector<int>> sequences;  // ell sequences of k host left ids

  std::size_t size() const { return sequences.size(); }
};

// Throws std::invalid_argument when the family violates an invariant
// (repeated vertex, vertex outside the matching, capacity overflow).
void validate_family(const RSGraph& host, const SequenceFamily& family,
                     double slack = kDefaultSlack);

// The edges that stitch consecutive sequence elements together: for each
// adjacent pair (u_i, u_{i+1}), both same-track edges between the a/b
// copies of v_i = M_j(u_i) and u_{i+1}. None of them exist in the encoded
// graph. k = 1 yields no edges.
std::vector<Edge> augmenting_edges(const EncodedRs& encoded, int j, const std::vector<int>& seq);

struct AugPath {
  std::vector<Edge> edges;  // 2k-1 edges alternating rep-matching / stitch
  int start = 0;            // a-copy of the first sequence vertex (left id)
  int end = 0;              // right id: a- or b-copy of the last partner
  bool ends_at_a = false;
};

// The unique alternating walk that starts at the a-copy of seq[0] and
// follows rep-matching and stitch edges. Which copy of the last partner
// it reaches is the XOR of the routing bits along the way.
AugPath augmenting_path(const EncodedRs& encoded, int j, const std::vector<int>& seq);

// XOR rule for the endpoint side: ends at the a-copy iff the XOR of the
// column bits over the sequence rows is zero.
bool parity_ends_at_a(const std::vector<std::uint8_t>& column_bits);

// Encoded graph plus pad vertices (one per rep-unmatched doubled vertex)
// and anchor vertices (one per sequence, attached to the path start).
//
// Local id layout. Left: [0, 2n) doubled host left, then 2(n-r) pads
// attached to rep-unmatched right vertices. Right: [0, 2n) doubled host
// right, then 2(n-r) pads attached to rep-unmatched left vertices, then
// ell anchors. Total vertex count 8n - 4r + ell.
struct AugGraph {
  EncodedRs encoded;
  int j = 0;
  SequenceFamily family;

  BipartiteGraph graph;             // all edges: encoded + extra
  std::vector<Edge> stitch_edges;   // between doubled vertices only
  std::vector<Edge> pad_matching;   // pad vertex <-> rep-unmatched vertex
  std::vector<Edge> anchor_matching;  // path start <-> anchor vertex
  std::vector<Edge> extra_edges;    // stitch + pad + anchor, sorted

  // Per sequence i: the a-copy of the last partner (a right id), and
  // whether the path actually ends there.
  std::vector<int> designated_endpoint;
  std::vector<std::uint8_t> path_ends_at_a;

  int left_count() const { return graph.left_count(); }
  int right_count() const { return graph.right_count(); }
  std::size_t vertex_count() const {
    return static_cast<std::size_t>(graph.left_count()) + graph.right_count();
  }

  // Endpoints whose path releases them (path ends at the a-copy): these
  // are exactly the vertices the certified maximum matching leaves free.
  std::vector<int> released_endpoints() const;
  // Endpoints whose path ends at the b-copy instead; the certified
  // minimum vertex cover contains all of them.
  std::vector<int> retained_endpoints() const;
};

AugGraph build_aug_graph(EncodedRs encoded, int j, SequenceFamily family,
                         double slack = kDefaultSlack);

// Maximum matching of size 4n - 2r that leaves every released endpoint
// unmatched: the full pad matching plus the rep matching with each
// anchored path applied as an alternating flip.
Matching certified_matching(const AugGraph& a);

// Minimum vertex cover of size 4n - 2r containing every retained
// endpoint and no released endpoint.
VertexCover certified_cover(const AugGraph& a);

// One draw from the distribution over augmentation graphs for a target
// parity vector: j uniform, the family uniform over vertex-disjoint
// ordered families, and the bit matrix uniform among those that make
// path i end at the a-copy iff target[i] == 0.
AugGraph sample_aug_graph(const RSGraph& host, const std::vector<std::uint8_t>& target, int k,
                          Rng& rng, double slack = kDefaultSlack);

// Sampler internals, exposed so properties of the conditional pieces can
// be tested (fixed j / fixed family resampling).
SequenceFamily sample_family(const RSGraph& host, int j, int k, int ell, Rng& rng);
BitMatrix sample_consistent_bits(const RSGraph& host, const SequenceFamily& family,
                                 const std::vector<std::uint8_t>& target, Rng& rng);

}  // namespace hmlab
