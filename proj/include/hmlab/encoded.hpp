#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hmlab/rs.hpp"

namespace hmlab {

// r x t binary matrix; entry (i, j) routes edge i of matching j in the
// encoded product. Row index i follows the host matching's stored edge
// order, column index j the host's matching order.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int i, int j) const { return bits_[index(i, j)] != 0; }
  void set(int i, int j, bool v) { bits_[index(i, j)] = v ? 1 : 0; }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t index(int i, int j) const;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

// File format: "bitmatrix <r> <t>" then r lines of t characters in {0,1}.
void write_bit_matrix(std::ostream& out, const BitMatrix& m);
BitMatrix read_bit_matrix(std::istream& in);

// The doubled graph: every host vertex v gets two representatives a_v and
// b_v; each matching edge is routed straight (bit 0: a-a and b-b) or
// crossed (bit 1: a-b and b-a). Representative ids are positional:
// a_v = v, b_v = v + n on both sides.
class EncodedRs {
 public:
  EncodedRs() = default;
  EncodedRs(RSGraph host, BitMatrix bits);

  const RSGraph& host() const { return host_; }
  const BitMatrix& bits() const { return bits_; }
  const BipartiteGraph& graph() const { return graph_; }
  int host_n() const { return host_.n(); }

  int rep_a(int v) const { return v; }
  int rep_b(int v) const { return v + host_.n(); }

  // The size-2r induced matching that matching j of the host becomes.
  const Matching& rep_matching(int j) const;
  int matching_count() const { return host_.t; }

  // View of the product as an RS graph in its own right (2r, t).
  RSGraph as_rs() const;

 private:
  RSGraph host_;
  BitMatrix bits_;
  BipartiteGraph graph_;
  std::vector<Matching> rep_matchings_;
};

EncodedRs encode_rs(RSGraph host, BitMatrix bits);

}  // namespace hmlab
