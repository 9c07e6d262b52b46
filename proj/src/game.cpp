#include "hmlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace hmlab {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.left) + "," + std::to_string(e.right) + ")";
}

}  // namespace

void validate_params(const GameParams& p, const RSGraph& rs1, const RSGraph& rs2) {
  auto bad = [](const std::string& msg) { throw std::invalid_argument("game params: " + msg); };
  if (p.n1 < 1 || p.n2 < 1) bad("graph sizes must be positive");
  if (p.r1 > p.n1 || p.r2 > p.n2) bad("matching size exceeds side size");
  if (p.k < 1) bad("k must be >= 1");
  if (p.delta < 0.0 || p.delta >= 0.25) bad("delta must lie in [0, 1/4)");
  if (rs1.n() != p.n1 || rs1.r != p.r1 || rs1.t != p.t1) {
    bad("first RS graph is (" + std::to_string(rs1.n()) + "," + std::to_string(rs1.r) + "," +
        std::to_string(rs1.t) + "), params say (" + std::to_string(p.n1) + "," +
        std::to_string(p.r1) + "," + std::to_string(p.t1) + ")");
  }
  if (rs2.n() != p.n2 || rs2.r != p.r2 || rs2.t != p.t2) {
    bad("second RS graph is (" + std::to_string(rs2.n()) + "," + std::to_string(rs2.r) + "," +
        std::to_string(rs2.t) + "), params say (" + std::to_string(p.n2) + "," +
        std::to_string(p.r2) + "," + std::to_string(p.t2) + ")");
  }
  if (static_cast<double>(p.k) * p.n1 > (1.0 - p.delta) * p.r2 + 1e-9) {
    bad("capacity: k*n1 = " + std::to_string(p.k * p.n1) + " exceeds (1-delta)*r2 = " +
        std::to_string((1.0 - p.delta) * p.r2));
  }
}

BipartiteGraph GameInstance::union_graph() const {
  std::vector<Edge> all = phase1a;
  all.insert(all.end(), phase1b.begin(), phase1b.end());
  all.insert(all.end(), phase2.begin(), phase2.end());
  return BipartiteGraph(n(), n(), std::move(all));
}

GameInstance sample_instance(const GameParams& params, const RSGraph& rs1, const RSGraph& rs2,
                             std::optional<std::uint64_t> drop_seed_override) {
  validate_params(params, rs1, rs2);
  Rng root(params.seed);

  GameInstance inst;
  inst.params = params;
  inst.rs1 = rs1;
  inst.rs2 = rs2;

  {
    Rng r = root.substream("hidden-index");
    inst.hidden_index = r.below_int(params.t1);
  }
  const Matching& hidden = rs1.matchings[inst.hidden_index];
  inst.hidden_left.assign(params.n1, 0);
  inst.hidden_right.assign(params.n1, 0);
  for (const Edge& e : hidden.edges()) {
    inst.hidden_left[e.left] = 1;
    inst.hidden_right[e.right] = 1;
  }

  {
    Rng r = root.substream("gadget-left");
    inst.gadget_left = sample_aug_graph(rs2, inst.hidden_left, params.k, r, params.delta);
  }
  {
    Rng r = root.substream("gadget-right");
    inst.gadget_right = sample_aug_graph(rs2, inst.hidden_right, params.k, r, params.delta);
  }

  // Core graph: every rs1 edge dropped independently with probability delta.
  Rng drop = drop_seed_override ? Rng(*drop_seed_override) : root.substream("drop");
  std::vector<Edge> kept;
  for (const Edge& e : rs1.graph.edges()) {
    if (!drop.bernoulli(params.delta)) kept.push_back(e);
  }
  for (const Edge& e : kept) inst.phase1a.push_back(inst.map_core(e));
  for (const Edge& e : hidden.edges()) {
    if (std::binary_search(kept.begin(), kept.end(), e)) {
      inst.hidden_survivors.push_back(inst.map_core(e));
    }
  }

  for (const Edge& e : inst.gadget_left.encoded.graph().edges()) {
    inst.phase1b.push_back(inst.map_left_gadget(e));
  }
  for (const Edge& e : inst.gadget_right.encoded.graph().edges()) {
    inst.phase1b.push_back(inst.map_right_gadget(e));
  }

  for (int i = 0; i < params.n1; ++i) {
    inst.link_left.push_back({inst.aug_left_width() + i, inst.gadget_left.designated_endpoint[i]});
    inst.link_right.push_back({inst.aug_right_width() + inst.gadget_right.designated_endpoint[i],
                               inst.aug_right_width() + i});
  }
  inst.phase2 = inst.link_left;
  inst.phase2.insert(inst.phase2.end(), inst.link_right.begin(), inst.link_right.end());
  for (const Edge& e : inst.gadget_left.extra_edges) {
    inst.phase2.push_back(inst.map_left_gadget(e));
  }
  for (const Edge& e : inst.gadget_right.extra_edges) {
    inst.phase2.push_back(inst.map_right_gadget(e));
  }

  std::sort(inst.phase1a.begin(), inst.phase1a.end());
  std::sort(inst.phase1b.begin(), inst.phase1b.end());
  std::sort(inst.phase2.begin(), inst.phase2.end());
  std::sort(inst.hidden_survivors.begin(), inst.hidden_survivors.end());

  // Sanity: the union is a simple bipartite graph of the right size.
  const BipartiteGraph u = inst.union_graph();
  if (u.left_count() != inst.n() || u.right_count() != inst.n()) {
    throw std::logic_error("sample_instance: union graph has wrong side sizes");
  }
  return inst;
}

EdgeStream assemble_stream(const GameInstance& inst, std::uint64_t order_seed) {
  Rng root(order_seed);
  EdgeStream stream;
  auto push_shuffled = [&](const std::vector<Edge>& edges, std::string_view label) {
    std::vector<Edge> copy = edges;
    Rng r = root.substream(label);
    r.shuffle(copy);
    stream.edges.insert(stream.edges.end(), copy.begin(), copy.end());
  };
  push_shuffled(inst.phase1a, "phase1a");
  stream.phase1a_end = stream.edges.size();
  push_shuffled(inst.phase1b, "phase1b");
  stream.phase1b_end = stream.edges.size();
  push_shuffled(inst.phase2, "phase2");
  return stream;
}

Matching certified_large_matching(const GameInstance& inst) {
  std::vector<Edge> edges;
  const Matching left_gadget = certified_matching(inst.gadget_left);
  for (const Edge& e : left_gadget.edges()) edges.push_back(inst.map_left_gadget(e));
  const Matching right_gadget = certified_matching(inst.gadget_right);
  for (const Edge& e : right_gadget.edges()) edges.push_back(inst.map_right_gadget(e));
  for (int i = 0; i < inst.params.n1; ++i) {
    if (inst.gadget_left.path_ends_at_a[i]) edges.push_back(inst.link_left[i]);
    if (inst.gadget_right.path_ends_at_a[i]) edges.push_back(inst.link_right[i]);
  }
  edges.insert(edges.end(), inst.hidden_survivors.begin(), inst.hidden_survivors.end());
  Matching m((std::vector<Edge>(edges)));
  if (!m.contained_in(inst.union_graph())) {
    throw std::logic_error("certified_large_matching: edge outside the instance");
  }
  return m;
}

AvoidanceBound max_matching_avoiding_hidden(const GameInstance& inst) {
  std::vector<Edge> remaining;
  const BipartiteGraph whole = inst.union_graph();
  for (const Edge& e : whole.edges()) {
    if (!std::binary_search(inst.hidden_survivors.begin(), inst.hidden_survivors.end(), e)) {
      remaining.push_back(e);
    }
  }
  const BipartiteGraph reduced(inst.n(), inst.n(), std::move(remaining));
  const Matching mm = hopcroft_karp(reduced);
  const int bound = inst.n() - 2 * inst.params.r1;
  if (static_cast<int>(mm.size()) > bound) {
    throw std::logic_error("avoidance bound violated: matching of size " +
                           std::to_string(mm.size()) + " avoids the hidden matching, bound " +
                           std::to_string(bound));
  }

  std::set<int> left, right;
  {
    const VertexCover c = certified_cover(inst.gadget_left);
    left.insert(c.left_ids.begin(), c.left_ids.end());
    right.insert(c.right_ids.begin(), c.right_ids.end());
  }
  {
    const VertexCover c = certified_cover(inst.gadget_right);
    for (int u : c.left_ids) right.insert(inst.aug_right_width() + inst.params.n1 + u);
    for (int w : c.right_ids) left.insert(inst.aug_right_width() + w);
  }
  for (int i = 0; i < inst.params.n1; ++i) {
    if (!inst.hidden_left[i]) left.insert(inst.aug_left_width() + i);
    if (!inst.hidden_right[i]) right.insert(inst.aug_right_width() + i);
  }
  VertexCover cover{std::vector<int>(left.begin(), left.end()),
                    std::vector<int>(right.begin(), right.end())};
  if (static_cast<int>(cover.size()) != bound) {
    throw std::logic_error("avoidance cover has size " + std::to_string(cover.size()) +
                           ", expected " + std::to_string(bound));
  }
  if (!is_vertex_cover(reduced, cover)) {
    throw std::logic_error("avoidance cover fails to cover the reduced graph");
  }
  return AvoidanceBound{static_cast<int>(mm.size()), std::move(cover)};
}

int evaluate_output(const GameInstance& inst, const std::vector<Edge>& answer) {
  std::vector<Edge> unique = answer;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  int value = 0;
  for (const Edge& e : unique) {
    if (!std::binary_search(inst.phase1a.begin(), inst.phase1a.end(), e)) return 0;
    if (std::binary_search(inst.hidden_survivors.begin(), inst.hidden_survivors.end(), e)) {
      ++value;
    }
  }
  return value;
}

std::vector<Edge> hidden_filter(const GameInstance& inst, const std::vector<Edge>& matching) {
  std::vector<Edge> candidates;
  for (const Edge& e : inst.rs1.matchings[inst.hidden_index].edges()) {
    candidates.push_back(inst.map_core(e));
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<Edge> out;
  for (const Edge& e : matching) {
    if (std::binary_search(candidates.begin(), candidates.end(), e)) out.push_back(e);
  }
  return out;
}

ApproxThreshold approx_threshold(const GameParams& params) {
  if (params.delta >= 0.25) {
    throw std::domain_error("approx_threshold: delta must be below 1/4");
  }
  const double n = params.n();
  const double r1 = params.r1;
  const double d = params.delta;
  ApproxThreshold out;
  out.beta = (1.0 - 4.0 * d) * r1 / (n - (1.0 + 2.0 * d) * r1);
  out.target_matching_size = (1.0 - out.beta) * (n - (1.0 + 2.0 * d) * r1);
  const double closed_form = n - 2.0 * r1 + 2.0 * d * r1;
  if (std::abs(out.target_matching_size - closed_form) > 1e-9 * std::max(1.0, closed_form)) {
    throw std::logic_error("approx_threshold: algebraic identity violated");
  }
  return out;
}

double rs_lower_bound_ratio(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("rs_lower_bound_ratio: alpha and beta must lie in (0, 1]");
  }
  const double denom = 16.0 / (alpha * beta) - 8.0 / beta + 2.0 - alpha;
  if (std::abs(denom) < 1e-12) throw std::domain_error("rs_lower_bound_ratio: zero denominator");
  return 1.0 - alpha / denom;
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kFormatVersion = "hmlab-1";

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_edges(std::ostream& out, const std::vector<Edge>& edges) {
  out << "edges " << edges.size() << '\n';
  for (const Edge& e : edges) out << e.left << ' ' << e.right << '\n';
}

std::vector<Edge> read_edges(std::istream& in) {
  std::string tag;
  std::size_t count = 0;
  if (!(in >> tag >> count) || tag != "edges") {
    throw std::runtime_error("instance file: expected 'edges <count>'");
  }
  std::vector<Edge> edges(count);
  for (auto& e : edges) {
    if (!(in >> e.left >> e.right)) throw std::runtime_error("instance file: truncated edge list");
  }
  return edges;
}

void expect_section(std::istream& in, const std::string& name) {
  std::string tag;
  if (!(in >> tag) || tag != name) {
    throw std::runtime_error("instance file: expected section " + name +
                             (tag.empty() ? "" : ", found " + tag));
  }
}

void write_gadget(std::ostream& out, const char* section, const AugGraph& a) {
  out << section << '\n';
  out << "index " << (a.j + 1) << '\n';
  write_bit_matrix(out, a.encoded.bits());
  out << "family " << a.family.size() << ' ' << a.family.k << '\n';
  for (const auto& seq : a.family.sequences) {
    for (std::size_t m = 0; m < seq.size(); ++m) out << seq[m] << (m + 1 < seq.size() ? ' ' : '\n');
  }
  out << "ends ";
  for (std::uint8_t b : a.path_ends_at_a) out << (b ? '1' : '0');
  out << '\n';
}

AugGraph read_gadget(std::istream& in, const std::string& section, const RSGraph& rs2,
                     double slack) {
  expect_section(in, section);
  std::string tag;
  int index = 0;
  if (!(in >> tag >> index) || tag != "index") {
    throw std::runtime_error("instance file: expected 'index' in " + section);
  }
  BitMatrix bits = read_bit_matrix(in);
  std::size_t ell = 0;
  int k = 0;
  if (!(in >> tag >> ell >> k) || tag != "family") {
    throw std::runtime_error("instance file: expected 'family <ell> <k>' in " + section);
  }
  SequenceFamily family;
  family.j = index - 1;
  family.k = k;
  family.sequences.assign(ell, std::vector<int>(k));
  for (auto& seq : family.sequences) {
    for (int& v : seq) {
      if (!(in >> v)) throw std::runtime_error("instance file: truncated family in " + section);
    }
  }
  std::string ends;
  if (!(in >> tag >> ends) || tag != "ends" || ends.size() != ell) {
    throw std::runtime_error("instance file: bad 'ends' line in " + section);
  }
  AugGraph a = build_aug_graph(encode_rs(rs2, std::move(bits)), index - 1, std::move(family), slack);
  for (std::size_t i = 0; i < ell; ++i) {
    if ((a.path_ends_at_a[i] != 0) != (ends[i] == '1')) {
      throw std::runtime_error("instance file: stored path ends disagree with reconstruction in " +
                               section);
    }
  }
  return a;
}

}  // namespace

void write_instance(std::ostream& out, const GameInstance& inst) {
  const GameParams& p = inst.params;
  out << "PARAMS\n";
  out << "version " << kFormatVersion << '\n';
  out << "n1 " << p.n1 << "\nr1 " << p.r1 << "\nt1 " << p.t1 << '\n';
  out << "n2 " << p.n2 << "\nr2 " << p.r2 << "\nt2 " << p.t2 << '\n';
  out << "k " << p.k << '\n';
  out << "delta " << format_double(p.delta) << '\n';
  out << "seed " << p.seed << '\n';
  out << "RS1\n";
  write_rs(out, inst.rs1);
  out << "RS2\n";
  write_rs(out, inst.rs2);
  write_gadget(out, "AUG_L", inst.gadget_left);
  write_gadget(out, "AUG_R", inst.gadget_right);
  out << "PHASE1_A\n";
  write_edges(out, inst.phase1a);
  out << "PHASE1_B\n";
  write_edges(out, inst.phase1b);
  out << "PHASE2\n";
  write_edges(out, inst.phase2);
  out << "HIDDEN\n";
  out << "index " << (inst.hidden_index + 1) << '\n';
  out << "survivors " << inst.hidden_survivors.size() << '\n';
  for (const Edge& e : inst.hidden_survivors) out << e.left << ' ' << e.right << '\n';
  out << "MAPS\n";
  out << "aug_left_width " << inst.aug_left_width() << '\n';
  out << "aug_right_width " << inst.aug_right_width() << '\n';
  out << "link_left " << inst.link_left.size() << '\n';
  for (const Edge& e : inst.link_left) out << e.left << ' ' << e.right << '\n';
  out << "link_right " << inst.link_right.size() << '\n';
  for (const Edge& e : inst.link_right) out << e.left << ' ' << e.right << '\n';
  out << "END\n";
}

GameInstance read_instance(std::istream& in) {
  GameInstance inst;
  expect_section(in, "PARAMS");
  std::string tag, version;
  GameParams& p = inst.params;
  if (!(in >> tag >> version) || tag != "version" || version != kFormatVersion) {
    throw std::runtime_error("instance file: unsupported version");
  }
  auto read_int = [&](const char* name, int& v) {
    if (!(in >> tag >> v) || tag != name) {
      throw std::runtime_error(std::string("instance file: expected '") + name + "'");
    }
  };
  read_int("n1", p.n1);
  read_int("r1", p.r1);
  read_int("t1", p.t1);
  read_int("n2", p.n2);
  read_int("r2", p.r2);
  read_int("t2", p.t2);
  read_int("k", p.k);
  if (!(in >> tag >> p.delta) || tag != "delta") {
    throw std::runtime_error("instance file: expected 'delta'");
  }
  if (!(in >> tag >> p.seed) || tag != "seed") {
    throw std::runtime_error("instance file: expected 'seed'");
  }
  expect_section(in, "RS1");
  inst.rs1 = read_rs(in);
  expect_section(in, "RS2");
  inst.rs2 = read_rs(in);
  inst.gadget_left = read_gadget(in, "AUG_L", inst.rs2, p.delta);
  inst.gadget_right = read_gadget(in, "AUG_R", inst.rs2, p.delta);
  expect_section(in, "PHASE1_A");
  inst.phase1a = read_edges(in);
  expect_section(in, "PHASE1_B");
  inst.phase1b = read_edges(in);
  expect_section(in, "PHASE2");
  inst.phase2 = read_edges(in);
  expect_section(in, "HIDDEN");
  int hidden_label = 0;
  if (!(in >> tag >> hidden_label) || tag != "index") {
    throw std::runtime_error("instance file: expected hidden 'index'");
  }
  inst.hidden_index = hidden_label - 1;
  std::size_t survivor_count = 0;
  if (!(in >> tag >> survivor_count) || tag != "survivors") {
    throw std::runtime_error("instance file: expected 'survivors <count>'");
  }
  inst.hidden_survivors.resize(survivor_count);
  for (auto& e : inst.hidden_survivors) {
    if (!(in >> e.left >> e.right)) throw std::runtime_error("instance file: truncated survivors");
  }
  expect_section(in, "MAPS");
  int stored_width = 0;
  read_int("aug_left_width", stored_width);
  if (stored_width != inst.aug_left_width()) {
    throw std::runtime_error("instance file: aug_left_width mismatch");
  }
  read_int("aug_right_width", stored_width);
  if (stored_width != inst.aug_right_width()) {
    throw std::runtime_error("instance file: aug_right_width mismatch");
  }
  std::size_t count = 0;
  if (!(in >> tag >> count) || tag != "link_left") {
    throw std::runtime_error("instance file: expected 'link_left'");
  }
  inst.link_left.resize(count);
  for (auto& e : inst.link_left) {
    if (!(in >> e.left >> e.right)) throw std::runtime_error("instance file: truncated link_left");
  }
  if (!(in >> tag >> count) || tag != "link_right") {
    throw std::runtime_error("instance file: expected 'link_right'");
  }
  inst.link_right.resize(count);
  for (auto& e : inst.link_right) {
    if (!(in >> e.left >> e.right)) throw std::runtime_error("instance file: truncated link_right");
  }
  expect_section(in, "END");

  if (inst.hidden_index < 0 || inst.hidden_index >= p.t1) {
    throw std::runtime_error("instance file: hidden index out of range");
  }
  inst.hidden_left.assign(p.n1, 0);
  inst.hidden_right.assign(p.n1, 0);
  for (const Edge& e : inst.rs1.matchings[inst.hidden_index].edges()) {
    inst.hidden_left[e.left] = 1;
    inst.hidden_right[e.right] = 1;
  }
  return inst;
}

std::string InstanceReport::to_string() const {
  if (valid()) return "valid";
  std::string s;
  for (const auto& v : violations) {
    s += v;
    s += '\n';
  }
  return s;
}

InstanceReport verify_instance(const GameInstance& inst) {
  InstanceReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const GameParams& p = inst.params;

  const RsReport rs1_report = verify_rs(inst.rs1);
  if (!rs1_report.valid()) fail("rs1 invalid: " + rs1_report.violations.front());
  const RsReport rs2_report = verify_rs(inst.rs2);
  if (!rs2_report.valid()) fail("rs2 invalid: " + rs2_report.violations.front());
  try {
    validate_params(p, inst.rs1, inst.rs2);
  } catch (const std::exception& e) {
    fail(e.what());
  }
  if (!report.valid()) return report;

  if (inst.hidden_index < 0 || inst.hidden_index >= p.t1) {
    fail("hidden index out of range");
    return report;
  }

  // Hidden characteristic vectors match the hidden matching.
  const Matching& hidden = inst.rs1.matchings[inst.hidden_index];
  std::vector<std::uint8_t> want_left(p.n1, 0), want_right(p.n1, 0);
  for (const Edge& e : hidden.edges()) {
    want_left[e.left] = 1;
    want_right[e.right] = 1;
  }
  if (want_left != inst.hidden_left || want_right != inst.hidden_right) {
    fail("hidden characteristic vectors do not match the hidden matching");
  }

  // Gadget targets: path i ends at the a-copy exactly when vertex i is
  // outside the hidden matching.
  for (int i = 0; i < p.n1; ++i) {
    if ((inst.gadget_left.path_ends_at_a[i] != 0) != (inst.hidden_left[i] == 0)) {
      fail("left gadget path " + std::to_string(i) + " parity disagrees with hidden vector");
    }
    if ((inst.gadget_right.path_ends_at_a[i] != 0) != (inst.hidden_right[i] == 0)) {
      fail("right gadget path " + std::to_string(i) + " parity disagrees with hidden vector");
    }
  }

  // Size formulas.
  const std::size_t gadget_size = static_cast<std::size_t>(8) * p.n2 - 4 * p.r2 + p.n1;
  if (inst.gadget_left.vertex_count() != gadget_size ||
      inst.gadget_right.vertex_count() != gadget_size) {
    fail("gadget vertex count differs from 8*n2-4*r2+n1");
  }

  // Phase edge sets re-derived from the gadgets.
  {
    std::vector<Edge> want;
    for (const Edge& e : inst.gadget_left.encoded.graph().edges()) {
      want.push_back(inst.map_left_gadget(e));
    }
    for (const Edge& e : inst.gadget_right.encoded.graph().edges()) {
      want.push_back(inst.map_right_gadget(e));
    }
    std::sort(want.begin(), want.end());
    if (want != inst.phase1b) fail("PHASE1_B does not equal the two encoded graphs");
  }
  {
    std::vector<Edge> want = inst.link_left;
    want.insert(want.end(), inst.link_right.begin(), inst.link_right.end());
    for (const Edge& e : inst.gadget_left.extra_edges) want.push_back(inst.map_left_gadget(e));
    for (const Edge& e : inst.gadget_right.extra_edges) want.push_back(inst.map_right_gadget(e));
    std::sort(want.begin(), want.end());
    if (want != inst.phase2) fail("PHASE2 does not equal links plus gadget extras");
  }
  for (int i = 0; i < p.n1; ++i) {
    const Edge want_l{inst.aug_left_width() + i, inst.gadget_left.designated_endpoint[i]};
    if (i >= static_cast<int>(inst.link_left.size()) || !(inst.link_left[i] == want_l)) {
      fail("link_left[" + std::to_string(i) + "] does not point at the designated endpoint");
      break;
    }
    const Edge want_r{inst.aug_right_width() + inst.gadget_right.designated_endpoint[i],
                      inst.aug_right_width() + i};
    if (i >= static_cast<int>(inst.link_right.size()) || !(inst.link_right[i] == want_r)) {
      fail("link_right[" + std::to_string(i) + "] does not point at the designated endpoint");
      break;
    }
  }

  // Core edges are a subset of rs1; survivors are exactly the hidden
  // edges present in the core.
  {
    std::vector<Edge> rs1_mapped;
    for (const Edge& e : inst.rs1.graph.edges()) rs1_mapped.push_back(inst.map_core(e));
    std::sort(rs1_mapped.begin(), rs1_mapped.end());
    for (const Edge& e : inst.phase1a) {
      if (!std::binary_search(rs1_mapped.begin(), rs1_mapped.end(), e)) {
        fail("PHASE1_A edge " + edge_str(e) + " is not an rs1 edge");
        break;
      }
    }
    std::vector<Edge> want;
    for (const Edge& e : hidden.edges()) {
      const Edge mapped = inst.map_core(e);
      if (std::binary_search(inst.phase1a.begin(), inst.phase1a.end(), mapped)) {
        want.push_back(mapped);
      }
    }
    std::sort(want.begin(), want.end());
    if (want != inst.hidden_survivors) fail("HIDDEN survivors list is inconsistent with PHASE1_A");
  }

  // Union graph must assemble cleanly at the right size (duplicate edges
  // or range violations throw).
  try {
    const BipartiteGraph u = inst.union_graph();
    if (u.left_count() != inst.n() || u.right_count() != inst.n()) {
      fail("union graph side sizes differ from 8*n2-4*r2+2*n1");
    }
  } catch (const std::exception& e) {
    fail(std::string("union graph: ") + e.what());
    return report;
  }

  // Certificates.
  try {
    const Matching large = certified_large_matching(inst);
    const std::size_t expected = 2 * (static_cast<std::size_t>(4) * p.n2 - 2 * p.r2) +
                                 2 * (static_cast<std::size_t>(p.n1) - p.r1) +
                                 inst.hidden_survivors.size();
    if (large.size() != expected) {
      fail("certified matching has size " + std::to_string(large.size()) + ", expected " +
           std::to_string(expected));
    }
  } catch (const std::exception& e) {
    fail(std::string("certified matching: ") + e.what());
  }
  try {
    max_matching_avoiding_hidden(inst);
  } catch (const std::exception& e) {
    fail(std::string("avoidance bound: ") + e.what());
  }
  return report;
}

}  // namespace hmlab
