#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hmlab/augmentation.hpp"

namespace hmlab {

// Parameters of one hard instance. The two RS graphs are supplied
// separately and must match (n1, r1, t1) and (n2, r2, t2). The capacity
// constraint k * n1 <= (1 - delta) * r2 makes room for n1 vertex-disjoint
// k-sequences per side in the second graph.
struct GameParams {
  int n1 = 0, r1 = 0, t1 = 0;
  int n2 = 0, r2 = 0, t2 = 0;
  int k = 1;
  double delta = 0.1;  // edge drop probability, in [0, 1/4)
  std::uint64_t seed = 0;

  // Total vertices per side of the assembled instance.
  int n() const { return 8 * n2 - 4 * r2 + 2 * n1; }
};

void validate_params(const GameParams& p, const RSGraph& rs1, const RSGraph& rs2);

// One sampled instance. Global ids, per side:
//   left : [0, AL) left half of the left gadget, then [AL, AL+n1) core
//          left, then the right half of the right gadget;
//   right: [0, AR) right half of the left gadget, then [AR, AR+n1) core
//          right, then the left half of the right gadget;
// with AL = 4*n2 - 2*r2 and AR = AL + n1. The right gadget is mounted
// mirrored so the whole union stays bipartite.
struct GameInstance {
  GameParams params;
  RSGraph rs1, rs2;

  int hidden_index = 0;                       // matching of rs1 the instance hides
  std::vector<std::uint8_t> hidden_left;      // characteristic vector of its left vertices
  std::vector<std::uint8_t> hidden_right;     // and of its right vertices
  AugGraph gadget_left, gadget_right;

  std::vector<Edge> phase1a;           // core graph: rs1 with edges dropped
  std::vector<Edge> phase1b;           // both encoded graphs
  std::vector<Edge> phase2;            // link matchings + pads/anchors/stitches
  std::vector<Edge> link_left, link_right;   // the link matchings alone
  std::vector<Edge> hidden_survivors;  // hidden matching edges that survived the drop

  int aug_left_width() const { return 4 * params.n2 - 2 * params.r2; }
  int aug_right_width() const { return aug_left_width() + params.n1; }
  int n() const { return params.n(); }

  // Region mappers (gadget-local / core-local -> global).
  Edge map_left_gadget(const Edge& e) const { return e; }
  Edge map_right_gadget(const Edge& e) const {
    return {aug_right_width() + e.right, aug_right_width() + params.n1 + e.left};
  }
  Edge map_core(const Edge& e) const {
    return {aug_left_width() + e.left, aug_right_width() + e.right};
  }

  BipartiteGraph union_graph() const;
};

GameInstance sample_instance(const GameParams& params, const RSGraph& rs1, const RSGraph& rs2,
                             std::optional<std::uint64_t> drop_seed_override = std::nullopt);

// Edge arrival order for the streaming harness: the three phases in
// order, each uniformly shuffled under order_seed.
struct EdgeStream {
  std::vector<Edge> edges;
  std::size_t phase1a_end = 0;
  std::size_t phase1b_end = 0;
};

EdgeStream assemble_stream(const GameInstance& inst, std::uint64_t order_seed);

// The large matching every instance is built to contain: both gadget
// certificates, the link edges of released endpoints, and the surviving
// hidden edges. Size 2*(4n2-2r2) + 2*(n1-r1) + s where s is the number of
// survivors.
Matching certified_large_matching(const GameInstance& inst);

struct AvoidanceBound {
  int max_matching_size = 0;  // exact, over the union minus the hidden matching
  VertexCover cover;          // explicit witness of size n - 2*r1
};

// Exact maximum matching of the union graph with the hidden matching
// removed. Must be at most n - 2*r1 on every instance; the returned
// cover certifies the bound.
AvoidanceBound max_matching_avoiding_hidden(const GameInstance& inst);

// 0 if any answer edge lies outside the surviving core graph, else the
// number of answer edges from the surviving hidden matching.
int evaluate_output(const GameInstance& inst, const std::vector<Edge>& answer);

// The reduction's answer extraction: the subset of a matching that lies
// on the hidden matching (in global coordinates). Feeding the result to
// evaluate_output scores a streaming run as a game protocol.
std::vector<Edge> hidden_filter(const GameInstance& inst, const std::vector<Edge>& matching);

struct ApproxThreshold {
  double beta = 0.0;
  double target_matching_size = 0.0;  // (1 - beta) * (n - (1+2*delta)*r1)
};

// beta = (1-4*delta)*r1 / (n - (1+2*delta)*r1); the identity
// (1-beta)*(n-(1+2*delta)*r1) == n - 2*r1 + 2*delta*r1 is re-checked at
// run time to 1e-9.
ApproxThreshold approx_threshold(const GameParams& params);

// 1 - alpha / (16/(alpha*beta) - 8/beta + 2 - alpha): the approximation
// ratio no two-pass semi-streaming algorithm can beat when (alpha, beta)
// RS density is available.
double rs_lower_bound_ratio(double alpha, double beta);

// Instance file: PARAMS, RS1, RS2, AUG_L, AUG_R, PHASE1_A, PHASE1_B,
// PHASE2, HIDDEN, MAPS sections. Everything needed to re-derive the
// certificates is embedded; redundant sections are cross-checked on read.
void write_instance(std::ostream& out, const GameInstance& inst);
GameInstance read_instance(std::istream& in);

struct InstanceReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
  std::string to_string() const;
};

// Re-derives every invariant and certificate of the instance: RS
// validity, gadget reconstruction, phase edge sets, size formulas, the
// avoidance bound with its cover, and validity of the certified matching.
InstanceReport verify_instance(const GameInstance& inst);

}  // namespace hmlab
