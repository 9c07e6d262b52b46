#include "hmlab/harness.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

namespace hmlab {

int MeteredStore::alloc_edge_set() {
  sets_.emplace_back();
  return static_cast<int>(sets_.size()) - 1;
}

bool MeteredStore::insert(int set_id, const Edge& e) {
  const bool added = sets_.at(set_id).insert(e).second;
  if (added) bump();
  return added;
}

bool MeteredStore::erase(int set_id, const Edge& e) { return sets_.at(set_id).erase(e) > 0; }

bool MeteredStore::contains(int set_id, const Edge& e) const {
  return sets_.at(set_id).count(e) > 0;
}

const std::set<Edge>& MeteredStore::view(int set_id) const { return sets_.at(set_id); }

int MeteredStore::alloc_scalar(std::int64_t initial) {
  scalars_.push_back(initial);
  bump();
  return static_cast<int>(scalars_.size()) - 1;
}

int MeteredStore::alloc_bitmap(int bits) {
  const int words = (bits + 63) / 64;
  bitmap_base_.push_back(static_cast<int>(scalars_.size()));
  scalars_.insert(scalars_.end(), words, 0);
  bump();
  return static_cast<int>(bitmap_base_.size()) - 1;
}

bool MeteredStore::get_bit(int bitmap, int index) const {
  const int slot = bitmap_base_.at(bitmap) + index / 64;
  return (static_cast<std::uint64_t>(scalars_.at(slot)) >> (index % 64)) & 1;
}

void MeteredStore::set_bit(int bitmap, int index, bool value) {
  const int slot = bitmap_base_.at(bitmap) + index / 64;
  auto word = static_cast<std::uint64_t>(scalars_.at(slot));
  const std::uint64_t mask = std::uint64_t{1} << (index % 64);
  word = value ? (word | mask) : (word & ~mask);
  scalars_.at(slot) = static_cast<std::int64_t>(word);
}

std::size_t MeteredStore::stored_edges() const {
  std::size_t total = 0;
  for (const auto& s : sets_) total += s.size();
  return total;
}

void MeteredStore::bump() {
  peak_edges_ = std::max(peak_edges_, stored_edges());
  peak_words_ = std::max(peak_words_, stored_words());
}

AlgorithmRun run_stream(const AlgorithmFactory& factory, const EdgeStream& stream, int side_count,
                        int passes, bool audit) {
  if (passes != 1 && passes != 2) {
    throw std::invalid_argument("run_stream: passes must be 1 or 2");
  }

  auto run_once = [&](bool handoff, AlgorithmRun& run) {
    MeteredStore store;
    std::unique_ptr<StreamingAlgorithm> alg = factory();
    run.algorithm = alg->name();
    alg->begin(side_count, passes, store);
    for (int pass = 1; pass <= passes; ++pass) {
      auto boundary = [&](int phase) {
        run.snapshots.push_back({pass, phase, store.stored_edges(), store.stored_words()});
        if (handoff) alg = factory();  // only the store crosses the boundary
      };
      for (std::size_t i = 0; i <= stream.edges.size(); ++i) {
        if (i == stream.phase1a_end) boundary(1);
        if (i == stream.phase1b_end) boundary(2);
        if (i < stream.edges.size()) alg->observe(stream.edges[i], store);
      }
      alg->end_pass(pass, store);
      boundary(3);
    }
    run.output = alg->finish(store);
    run.peak_stored_edges = store.peak_edges();
    run.peak_stored_words = store.peak_words();
  };

  AlgorithmRun run;
  run.passes = passes;
  run_once(false, run);

  std::set<Edge> observed(stream.edges.begin(), stream.edges.end());
  run.output_from_stream = std::all_of(run.output.begin(), run.output.end(),
                                       [&](const Edge& e) { return observed.count(e) > 0; });

  if (audit) {
    AlgorithmRun replay;
    replay.passes = passes;
    run_once(true, replay);
    run.audit_ok = replay.output == run.output;
  }
  return run;
}

// ---------------------------------------------------------------------------
// Greedy
// ---------------------------------------------------------------------------

namespace {

class GreedyMatching final : public StreamingAlgorithm {
 public:
  std::string name() const override { return "greedy"; }
  int passes() const override { return 1; }

  // Store layout: edge set 0 = the matching; bitmaps 0/1 = matched
  // left/right vertices.
  void begin(int side_count, int /*passes*/, MeteredStore& store) override {
    store.alloc_edge_set();
    store.alloc_bitmap(side_count);
    store.alloc_bitmap(side_count);
  }

  void observe(const Edge& e, MeteredStore& store) override {
    if (!store.get_bit(0, e.left) && !store.get_bit(1, e.right)) {
      store.insert(0, e);
      store.set_bit(0, e.left, true);
      store.set_bit(1, e.right, true);
    }
  }

  void end_pass(int, MeteredStore&) override {}

  std::vector<Edge> finish(const MeteredStore& store) const override {
    const auto& m = store.view(0);
    return {m.begin(), m.end()};
  }
};

// ---------------------------------------------------------------------------
// Two passes: greedy, then vertex-disjoint length-3 augmentations
// ---------------------------------------------------------------------------

class TwoPassAugment final : public StreamingAlgorithm {
 public:
  std::string name() const override { return "twopass"; }
  int passes() const override { return 2; }

  // Store layout: edge set 0 = matching, 1 = left wings keyed by the
  // matched right vertex (stored flipped), 2 = right wings keyed by the
  // matched left vertex; scalar slot 0 = current pass (allocated before
  // the bitmaps so its slot index is fixed); bitmaps 0/1 = matched
  // vertices after pass 1.
  void begin(int side_count, int /*passes*/, MeteredStore& store) override {
    store.alloc_edge_set();
    store.alloc_edge_set();
    store.alloc_edge_set();
    store.alloc_scalar(1);
    store.alloc_bitmap(side_count);
    store.alloc_bitmap(side_count);
  }

  void observe(const Edge& e, MeteredStore& store) override {
    const bool left_matched = store.get_bit(0, e.left);
    const bool right_matched = store.get_bit(1, e.right);
    if (store.scalar(0) == 1) {
      if (!left_matched && !right_matched) {
        store.insert(0, e);
        store.set_bit(0, e.left, true);
        store.set_bit(1, e.right, true);
      }
      return;
    }
    if (!left_matched && right_matched && !find_key(store, 1, e.right)) {
      store.insert(1, {e.right, e.left});
    } else if (left_matched && !right_matched && !find_key(store, 2, e.left)) {
      store.insert(2, {e.left, e.right});
    }
  }

  void end_pass(int pass, MeteredStore& store) override { store.set_scalar(0, pass + 1); }

  std::vector<Edge> finish(const MeteredStore& store) const override {
    std::vector<Edge> output;
    std::set<int> used_left, used_right;
    for (const Edge& m : store.view(0)) {
      const auto left_wing = find_key(store, 1, m.right);   // {matched right, free left}
      const auto right_wing = find_key(store, 2, m.left);   // {matched left, free right}
      if (left_wing && right_wing && !used_left.count(left_wing->right) &&
          !used_right.count(right_wing->right)) {
        output.push_back({left_wing->right, m.right});
        output.push_back({m.left, right_wing->right});
        used_left.insert(left_wing->right);
        used_right.insert(right_wing->right);
      } else {
        output.push_back(m);
      }
    }
    std::sort(output.begin(), output.end());
    return output;
  }

 private:
  static std::optional<Edge> find_key(const MeteredStore& store, int set_id, int key) {
    const auto& s = store.view(set_id);
    auto it = s.lower_bound({key, std::numeric_limits<int>::min()});
    if (it != s.end() && it->left == key) return *it;
    return std::nullopt;
  }
};

// ---------------------------------------------------------------------------
// Clairvoyant
// ---------------------------------------------------------------------------

// Configuration is public knowledge plus the revealed hidden-matching
// index: parameters, both RS graphs, which rs1 matching is hidden. The
// drop pattern, routing bits and sequence families stay unknown and are
// recovered from the stream.
struct ClairvoyantConfig {
  GameParams params;
  std::vector<Edge> hidden_global;  // sorted candidate hidden edges
  std::vector<Edge> rs2_edges;      // sorted second-graph host edges
};

class Clairvoyant final : public StreamingAlgorithm {
 public:
  explicit Clairvoyant(ClairvoyantConfig config) : cfg_(std::move(config)) {}

  std::string name() const override { return "clairvoyant"; }
  int passes() const override { return 2; }

  // Store layout: edge set 0 = surviving hidden edges, 1 = phase-2 edges
  // (links, pads, anchors, stitches), 2 = gadget rep edges; scalar 0 =
  // current pass; bitmaps 0..3 = rep-matched flags (left gadget L side,
  // left gadget R side, right gadget L side, right gadget R side).
  void begin(int /*side_count*/, int passes, MeteredStore& store) override {
    if (passes != 2) throw std::invalid_argument("clairvoyant needs two passes");
    store.alloc_edge_set();
    store.alloc_edge_set();
    store.alloc_edge_set();
    store.alloc_scalar(1);
    const int doubled = 2 * cfg_.params.n2;
    for (int b = 0; b < 4; ++b) store.alloc_bitmap(doubled);
  }

  void observe(const Edge& e, MeteredStore& store) override {
    if (std::binary_search(cfg_.hidden_global.begin(), cfg_.hidden_global.end(), e)) {
      store.insert(0, e);
      return;
    }
    const int al = aug_left_width();
    const int ar = al + cfg_.params.n1;
    const int n1 = cfg_.params.n1;
    if (e.left >= al && e.left < al + n1) {
      if (e.right < ar) store.insert(1, e);  // left link; other core edges are useless
      return;
    }
    const bool right_gadget = e.left >= al + n1;
    if (right_gadget && e.right >= ar && e.right < ar + n1) {
      store.insert(1, e);  // right link
      return;
    }
    const Edge local = to_local(e, right_gadget);
    const int doubled = 2 * cfg_.params.n2;
    if (local.left >= doubled || local.right >= doubled) {
      store.insert(1, e);  // pad or anchor edge
      return;
    }
    const Edge host{local.left % cfg_.params.n2, local.right % cfg_.params.n2};
    if (!std::binary_search(cfg_.rs2_edges.begin(), cfg_.rs2_edges.end(), host)) {
      store.insert(1, e);  // stitch edge
      return;
    }
    // Encoded edge. Only the two rep matchings are worth keeping; they
    // become recognizable in pass 2 as the pad complement.
    if (store.scalar(0) >= 2) {
      const int base = right_gadget ? 2 : 0;
      if (store.get_bit(base, local.left) && store.get_bit(base + 1, local.right)) {
        store.insert(2, e);
      }
    }
  }

  void end_pass(int pass, MeteredStore& store) override {
    if (pass == 1) mark_rep_vertices(store);
    store.set_scalar(0, pass + 1);
  }

  std::vector<Edge> finish(const MeteredStore& store) const override {
    std::vector<Edge> output(store.view(0).begin(), store.view(0).end());
    assemble_side(store, /*right_gadget=*/false, output);
    assemble_side(store, /*right_gadget=*/true, output);
    std::sort(output.begin(), output.end());
    return output;
  }

 private:
  int aug_left_width() const { return 4 * cfg_.params.n2 - 2 * cfg_.params.r2; }

  Edge to_local(const Edge& e, bool right_gadget) const {
    if (!right_gadget) return e;
    const int al = aug_left_width();
    const int ar = al + cfg_.params.n1;
    return {e.right - (ar + cfg_.params.n1), e.left - (al + cfg_.params.n1)};
  }

  Edge to_global(const Edge& local, bool right_gadget) const {
    if (!right_gadget) return local;
    const int al = aug_left_width();
    const int ar = al + cfg_.params.n1;
    return {al + cfg_.params.n1 + local.right, ar + cfg_.params.n1 + local.left};
  }

  bool edge_in_gadget(const Edge& e, bool right_gadget) const {
    const int al = aug_left_width();
    const int ar = al + cfg_.params.n1;
    if (right_gadget) return e.left >= al + cfg_.params.n1 && e.right >= ar + cfg_.params.n1;
    return e.left < al && e.right < ar;
  }

  // Rep-matched = not attached to a pad. Pads sit in edge set 1 after
  // pass 1, so the bitmaps are pure functions of the store.
  void mark_rep_vertices(MeteredStore& store) const {
    const int doubled = 2 * cfg_.params.n2;
    const int pad_end = doubled + 2 * (cfg_.params.n2 - cfg_.params.r2);
    for (int side = 0; side < 4; ++side) {
      for (int v = 0; v < doubled; ++v) store.set_bit(side, v, true);
    }
    for (const Edge& e : store.view(1)) {
      for (int g = 0; g < 2; ++g) {
        const bool right_gadget = g == 1;
        if (!edge_in_gadget(e, right_gadget)) continue;
        const Edge local = to_local(e, right_gadget);
        const int base = right_gadget ? 2 : 0;
        if (local.left < doubled && local.right >= doubled && local.right < pad_end) {
          store.set_bit(base, local.left, false);
        } else if (local.right < doubled && local.left >= doubled && local.left < pad_end) {
          store.set_bit(base + 1, local.right, false);
        }
      }
    }
  }

  // Rebuild one gadget's certified matching from the stored pieces and
  // append it, plus the link edges of released endpoints, to the output.
  void assemble_side(const MeteredStore& store, bool right_gadget,
                     std::vector<Edge>& output) const {
    const int doubled = 2 * cfg_.params.n2;
    const int pad_end = doubled + 2 * (cfg_.params.n2 - cfg_.params.r2);
    const int al = aug_left_width();
    const int ar = al + cfg_.params.n1;
    const int n1 = cfg_.params.n1;

    std::vector<Edge> pads, anchors, stitches, links;
    for (const Edge& e : store.view(1)) {
      if (!right_gadget && e.left >= al && e.left < al + n1 && e.right < ar) {
        links.push_back(e);
        continue;
      }
      if (right_gadget && e.left >= al + n1 && e.right >= ar && e.right < ar + n1) {
        links.push_back(e);
        continue;
      }
      if (!edge_in_gadget(e, right_gadget)) continue;
      const Edge local = to_local(e, right_gadget);
      if (local.right >= pad_end) {
        anchors.push_back(local);
      } else if (local.left >= doubled || local.right >= doubled) {
        pads.push_back(local);
      } else {
        stitches.push_back(local);
      }
    }

    std::map<int, Edge> rep_by_left;
    for (const Edge& e : store.view(2)) {
      if (!edge_in_gadget(e, right_gadget)) continue;
      const Edge local = to_local(e, right_gadget);
      rep_by_left[local.left] = local;
    }
    std::map<int, int> successor;  // stitch: path right vertex -> next left vertex
    for (const Edge& s : stitches) successor[s.right] = s.left;

    // Alternating flip along each anchored path: drop the rep edges on
    // the path, pick the stitches and the anchor, freeing the path end.
    std::set<Edge> picked;
    for (const auto& [l, e] : rep_by_left) picked.insert(e);
    for (const Edge& anchor : anchors) {
      int cur = anchor.left;
      while (true) {
        const auto it = rep_by_left.find(cur);
        if (it == rep_by_left.end()) break;
        picked.erase(it->second);
        const int v = it->second.right;
        const auto next = successor.find(v);
        if (next == successor.end()) break;  // v is the path end
        picked.insert({next->second, v});
        cur = next->second;
      }
      picked.insert(anchor);
    }
    for (const Edge& p : pads) picked.insert(p);

    std::set<int> matched_right;
    for (const Edge& e : picked) {
      if (e.right < doubled) matched_right.insert(e.right);
      output.push_back(to_global(e, right_gadget));
    }
    for (const Edge& link : links) {
      const int endpoint = right_gadget ? link.left - (al + n1) : link.right;
      if (!matched_right.count(endpoint)) output.push_back(link);
    }
  }

  ClairvoyantConfig cfg_;
};

}  // namespace

AlgorithmFactory greedy_matching() {
  return [] { return std::make_unique<GreedyMatching>(); };
}

AlgorithmFactory two_pass_augment() {
  return [] { return std::make_unique<TwoPassAugment>(); };
}

AlgorithmFactory clairvoyant(const GameInstance& inst) {
  ClairvoyantConfig cfg;
  cfg.params = inst.params;
  for (const Edge& e : inst.rs1.matchings[inst.hidden_index].edges()) {
    cfg.hidden_global.push_back(inst.map_core(e));
  }
  std::sort(cfg.hidden_global.begin(), cfg.hidden_global.end());
  cfg.rs2_edges = inst.rs2.graph.edges();
  return [cfg] { return std::make_unique<Clairvoyant>(cfg); };
}

}  // namespace hmlab
