#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hmlab/game.hpp"

namespace hmlab {

// All persistent state of a streaming algorithm. One stored edge or one
// scalar counter costs one word; peaks are tracked on every mutation and
// the whole store is the unit handed across phase boundaries, matching
// the protocol simulation where players exchange memory contents.
class MeteredStore {
 public:
  int alloc_edge_set();
  bool insert(int set_id, const Edge& e);
  bool erase(int set_id, const Edge& e);
  bool contains(int set_id, const Edge& e) const;
  const std::set<Edge>& view(int set_id) const;

  int alloc_scalar(std::int64_t initial = 0);
  std::int64_t scalar(int slot) const { return scalars_.at(slot); }
  void set_scalar(int slot, std::int64_t v) { scalars_.at(slot) = v; }

  // Bit registers backed by scalar slots, 64 bits per word.
  int alloc_bitmap(int bits);
  bool get_bit(int bitmap, int index) const;
  void set_bit(int bitmap, int index, bool value);

  std::size_t stored_edges() const;
  std::size_t stored_words() const { return stored_edges() + scalars_.size(); }
  std::size_t peak_edges() const { return peak_edges_; }
  std::size_t peak_words() const { return peak_words_; }

 private:
  void bump();
  std::vector<std::set<Edge>> sets_;
  std::vector<std::int64_t> scalars_;
  std::vector<int> bitmap_base_;
  std::size_t peak_edges_ = 0;
  std::size_t peak_words_ = 0;
};

// Contract: begin() is called once per run and fixes the store layout;
// after that every decision must be a function of the store and the
// algorithm's immutable configuration. The harness audit mode replaces
// the object with a freshly constructed one at every phase boundary, so
// state smuggled in data members does not survive.
class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual int passes() const = 0;
  virtual void begin(int side_count, int passes, MeteredStore& store) = 0;
  virtual void observe(const Edge& e, MeteredStore& store) = 0;
  virtual void end_pass(int pass, MeteredStore& store) = 0;
  virtual std::vector<Edge> finish(const MeteredStore& store) const = 0;
};

using AlgorithmFactory = std::function<std::unique_ptr<StreamingAlgorithm>()>;

struct Snapshot {
  int pass = 0;
  int phase = 0;  // 1, 2, 3 = after core, after encoded graphs, after pass
  std::size_t stored_edges = 0;
  std::size_t stored_words = 0;
};

struct AlgorithmRun {
  std::string algorithm;
  int passes = 0;
  std::size_t peak_stored_edges = 0;
  std::size_t peak_stored_words = 0;
  std::vector<Edge> output;
  std::vector<Snapshot> snapshots;
  bool audit_ok = true;           // output reproduced across object handoffs
  bool output_from_stream = true;  // every output edge was observed
  bool non_streaming() const { return !audit_ok || !output_from_stream; }
};

// Replays the stream `passes` times in identical order, recording a
// snapshot at every phase boundary. With audit enabled the run is
// repeated with the algorithm object torn down and rebuilt at each
// boundary (only the store survives); a mismatch flags the run.
AlgorithmRun run_stream(const AlgorithmFactory& factory, const EdgeStream& stream,
                        int side_count, int passes, bool audit = true);

// One pass, keeps an edge iff both endpoints are unmatched. Output is a
// maximal matching, so at least half the optimum.
AlgorithmFactory greedy_matching();

// Pass 1 greedy; pass 2 records one free wing per matched endpoint and
// applies vertex-disjoint length-3 augmentations. Never worse than the
// pass-1 matching.
AlgorithmFactory two_pass_augment();

// Cheating baseline: receives the hidden matching index out of band.
// Stores the surviving hidden edges in pass 1 together with the public
// phase-2 structure, collects the two gadget rep matchings in pass 2 and
// rebuilds the certified matching, all in O(n) words.
AlgorithmFactory clairvoyant(const GameInstance& inst);

}  // namespace hmlab
