#include "hmlab/encoded.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hmlab {

BitMatrix::BitMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("bit matrix: negative dimension");
  bits_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

std::size_t BitMatrix::index(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw std::out_of_range("bit matrix: index (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return static_cast<std::size_t>(i) * cols_ + j;
}

void write_bit_matrix(std::ostream& out, const BitMatrix& m) {
  out << "bitmatrix " << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out << (m.get(i, j) ? '1' : '0');
    out << '\n';
  }
}

BitMatrix read_bit_matrix(std::istream& in) {
  std::string tag;
  int r = 0, t = 0;
  if (!(in >> tag >> r >> t) || tag != "bitmatrix") {
    throw std::runtime_error("bit matrix file: expected 'bitmatrix <r> <t>' header");
  }
  BitMatrix m(r, t);
  for (int i = 0; i < r; ++i) {
    std::string row;
    if (!(in >> row) || static_cast<int>(row.size()) != t) {
      throw std::runtime_error("bit matrix file: bad row " + std::to_string(i + 1));
    }
    for (int j = 0; j < t; ++j) {
      if (row[j] != '0' && row[j] != '1') {
        throw std::runtime_error("bit matrix file: row " + std::to_string(i + 1) + " column " +
                                 std::to_string(j + 1) + " is not 0/1");
      }
      m.set(i, j, row[j] == '1');
    }
  }
  return m;
}

EncodedRs::EncodedRs(RSGraph host, BitMatrix bits) : host_(std::move(host)), bits_(std::move(bits)) {
  if (bits_.rows() != host_.r || bits_.cols() != host_.t) {
    throw std::invalid_argument("encode_rs: bit matrix is " + std::to_string(bits_.rows()) + "x" +
                                std::to_string(bits_.cols()) + ", host needs " +
                                std::to_string(host_.r) + "x" + std::to_string(host_.t));
  }
  const int n = host_.n();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(2) * host_.r * host_.t);
  rep_matchings_.reserve(host_.t);
  for (int j = 0; j < host_.t; ++j) {
    const auto& host_edges = host_.matchings[j].edges();
    std::vector<Edge> rep;
    rep.reserve(host_edges.size() * 2);
    for (std::size_t i = 0; i < host_edges.size(); ++i) {
      const int u = host_edges[i].left;
      const int v = host_edges[i].right;
      if (bits_.get(static_cast<int>(i), j)) {
        rep.push_back({rep_a(u), rep_b(v)});
        rep.push_back({rep_b(u), rep_a(v)});
      } else {
        rep.push_back({rep_a(u), rep_a(v)});
        rep.push_back({rep_b(u), rep_b(v)});
      }
    }
    edges.insert(edges.end(), rep.begin(), rep.end());
    rep_matchings_.emplace_back(std::move(rep));
  }
  graph_ = BipartiteGraph(2 * n, 2 * n, std::move(edges));

  RsReport report = verify_rs(as_rs());
  if (!report.valid()) {
    throw std::logic_error("encode_rs: product is not a valid RS graph:\n" + report.to_string());
  }
}

const Matching& EncodedRs::rep_matching(int j) const {
  if (j < 0 || j >= static_cast<int>(rep_matchings_.size())) {
    throw std::out_of_range("rep_matching: index " + std::to_string(j) + " outside [0, " +
                            std::to_string(rep_matchings_.size()) + ")");
  }
  return rep_matchings_[j];
}

RSGraph EncodedRs::as_rs() const {
  return RSGraph{graph_, rep_matchings_, 2 * host_.r, host_.t};
}

EncodedRs encode_rs(RSGraph host, BitMatrix bits) {
  return EncodedRs(std::move(host), std::move(bits));
}

}  // namespace hmlab
