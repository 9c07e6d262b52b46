#include "hmlab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace hmlab {

namespace {

constexpr double kNormTolerance = 1e-12;

double log2_safe(double x) { return std::log2(x); }

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<double> weights) : p_(std::move(weights)) {
  double sum = 0.0;
  for (double w : p_) {
    if (w < -kNormTolerance) throw std::invalid_argument("distribution: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) {
    throw std::invalid_argument("distribution: weights sum to " + std::to_string(sum));
  }
}

std::size_t FiniteDistribution::support_size() const {
  std::size_t count = 0;
  for (double w : p_) count += w > 0.0 ? 1 : 0;
  return count;
}

double entropy(const FiniteDistribution& d) {
  double h = 0.0;
  for (double w : d.weights()) {
    if (w > 0.0) h -= w * log2_safe(w);
  }
  return h;
}

double binary_entropy(double delta) {
  if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("binary_entropy: argument outside [0,1]");
  double h = 0.0;
  if (delta > 0.0) h -= delta * log2_safe(delta);
  if (delta < 1.0) h -= (1.0 - delta) * log2_safe(1.0 - delta);
  return h;
}

double kl_divergence(const FiniteDistribution& mu, const FiniteDistribution& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu.at(i) <= 0.0) continue;
    if (nu.at(i) <= 0.0) return std::numeric_limits<double>::infinity();
    kl += mu.at(i) * log2_safe(mu.at(i) / nu.at(i));
  }
  return std::max(kl, 0.0);
}

double total_variation(const FiniteDistribution& mu, const FiniteDistribution& nu) {
  if (mu.size() != nu.size()) throw std::invalid_argument("total_variation: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) sum += std::abs(mu.at(i) - nu.at(i));
  return 0.5 * sum;
}

bool pinsker_check(const FiniteDistribution& mu, const FiniteDistribution& nu) {
  const double kl = kl_divergence(mu, nu);
  if (std::isinf(kl)) return true;
  return total_variation(mu, nu) <= std::sqrt(0.5 * kl) + 1e-12;
}

bool pair_uniform_check(const FiniteDistribution& d, double eps) {
  if (eps <= 0.0 || eps >= 0.5) throw std::invalid_argument("pair_uniform_check: eps outside (0, 1/2)");
  std::vector<double> support;
  for (double w : d.weights()) {
    if (w > 0.0) support.push_back(w);
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (i == j) continue;
      const double conditional = support[i] / (support[i] + support[j]);
      if (conditional < (1.0 - eps) / 2.0 - 1e-12 || conditional > (1.0 + eps) / 2.0 + 1e-12) {
        return true;  // hypothesis fails, implication vacuous
      }
    }
  }
  const double lo = (1.0 - 2.0 * eps) / support.size() - 1e-12;
  const double hi = (1.0 + 2.0 * eps) / support.size() + 1e-12;
  return std::all_of(support.begin(), support.end(),
                     [&](double w) { return w >= lo && w <= hi; });
}

BooleanFunction::BooleanFunction(int dimension, std::vector<double> values)
    : n_(dimension), values_(std::move(values)) {
  if (dimension < 0 || dimension > 24) {
    throw std::invalid_argument("boolean function: dimension must be in [0, 24]");
  }
  if (values_.size() != (std::size_t{1} << dimension)) {
    throw std::invalid_argument("boolean function: table size is not 2^dimension");
  }
}

std::size_t BooleanFunction::support_size() const {
  std::size_t count = 0;
  for (double v : values_) count += v != 0.0 ? 1 : 0;
  return count;
}

namespace {

// In-place Walsh-Hadamard butterfly: out[s] = sum_x in[x] * (-1)^{|x&s|}.
void fwht(std::vector<double>& a) {
  for (std::size_t half = 1; half < a.size(); half <<= 1) {
    for (std::size_t block = 0; block < a.size(); block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double x = a[i];
        const double y = a[i + half];
        a[i] = x + y;
        a[i + half] = x - y;
      }
    }
  }
}

}  // namespace

std::vector<double> walsh_fourier(const BooleanFunction& f) {
  std::vector<double> coeffs = f.values();
  fwht(coeffs);
  const double scale = 1.0 / static_cast<double>(std::size_t{1} << f.dimension());
  for (double& c : coeffs) c *= scale;
  return coeffs;
}

BooleanFunction inverse_walsh(int dimension, const std::vector<double>& coefficients) {
  std::vector<double> values = coefficients;
  if (values.size() != (std::size_t{1} << dimension)) {
    throw std::invalid_argument("inverse_walsh: table size is not 2^dimension");
  }
  fwht(values);
  return BooleanFunction(dimension, std::move(values));
}

bool kkl_check(const BooleanFunction& f, double gamma) {
  if (gamma <= 0.0 || gamma >= 1.0) throw std::invalid_argument("kkl_check: gamma outside (0,1)");
  for (double v : f.values()) {
    if (v != -1.0 && v != 0.0 && v != 1.0) {
      throw std::invalid_argument("kkl_check: values must lie in {-1, 0, +1}");
    }
  }
  const auto coeffs = walsh_fourier(f);
  double lhs = 0.0;
  for (std::size_t s = 0; s < coeffs.size(); ++s) {
    lhs += std::pow(gamma, std::popcount(static_cast<std::uint32_t>(s))) * coeffs[s] * coeffs[s];
  }
  const double density =
      static_cast<double>(f.support_size()) / static_cast<double>(coeffs.size());
  const double rhs = std::pow(density, 2.0 / (1.0 + gamma));
  return lhs <= rhs + 1e-10;
}

SupportSet full_support(int dimension) {
  SupportSet s{dimension, {}};
  s.members.resize(std::size_t{1} << dimension);
  for (std::size_t i = 0; i < s.members.size(); ++i) s.members[i] = static_cast<std::uint32_t>(i);
  return s;
}

SupportSet even_parity_support(int dimension) {
  SupportSet s{dimension, {}};
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << dimension); ++x) {
    if (std::popcount(x) % 2 == 0) s.members.push_back(x);
  }
  return s;
}

namespace {

void validate_support(const SupportSet& s, int k) {
  if (s.dimension < 1 || s.dimension > 24) {
    throw std::invalid_argument("support set: dimension must be in [1, 24]");
  }
  if (s.members.empty()) throw std::invalid_argument("support set: empty");
  if (k < 1 || k > s.dimension) throw std::invalid_argument("xor bias: k outside [1, dimension]");
  for (std::uint32_t m : s.members) {
    if (m >= (std::uint32_t{1} << s.dimension)) {
      throw std::invalid_argument("support set: member outside the cube");
    }
  }
}

void fill_bounds(const SupportSet& s, int k, XorBiasResult& out) {
  const double deficiency =
      static_cast<double>(s.dimension) - log2_safe(static_cast<double>(s.members.size()));
  const double base = deficiency / static_cast<double>(s.dimension);
  out.bound_c1 = std::sqrt(std::pow(1.0 * base, k));
  out.bound_c2 = std::sqrt(std::pow(2.0 * base, k));
  out.bound_c4 = std::sqrt(std::pow(4.0 * base, k));
}

}  // namespace

XorBiasResult xor_bias_exact(const SupportSet& s, int k) {
  validate_support(s, k);
  if (s.dimension > 20) throw std::invalid_argument("xor_bias_exact: dimension must be <= 20");
  const std::size_t cube = std::size_t{1} << s.dimension;
  std::vector<double> indicator(cube, 0.0);
  for (std::uint32_t m : s.members) indicator[m] = 1.0;
  fwht(indicator);  // indicator[S] = sum_{z in s} (-1)^{|z&S|} = |s| * bias(S)

  XorBiasResult out;
  out.k = k;
  const double inv = 1.0 / static_cast<double>(s.members.size());
  double abs_sum = 0.0, sq_sum = 0.0;
  std::size_t count = 0;
  for (std::size_t mask = 0; mask < cube; ++mask) {
    if (std::popcount(static_cast<std::uint32_t>(mask)) != k) continue;
    const double bias = indicator[mask] * inv;
    abs_sum += std::abs(bias);
    sq_sum += bias * bias;
    ++count;
  }
  out.subsets = count;
  out.mean_abs_bias = abs_sum / static_cast<double>(count);
  out.mean_sq_bias = sq_sum / static_cast<double>(count);
  fill_bounds(s, k, out);
  return out;
}

XorBiasResult xor_bias_sampled(const SupportSet& s, int k, int trials, Rng& rng) {
  validate_support(s, k);
  if (trials < 1) throw std::invalid_argument("xor_bias_sampled: trials must be positive");
  std::vector<int> coords(s.dimension);
  for (int i = 0; i < s.dimension; ++i) coords[i] = i;

  XorBiasResult out;
  out.k = k;
  out.subsets = static_cast<std::size_t>(trials);
  double abs_sum = 0.0, sq_sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    // Uniform k-subset via partial Fisher-Yates.
    std::uint32_t mask = 0;
    for (int i = 0; i < k; ++i) {
      const int j = i + rng.below_int(s.dimension - i);
      std::swap(coords[i], coords[j]);
      mask |= std::uint32_t{1} << coords[i];
    }
    std::int64_t diff = 0;
    for (std::uint32_t z : s.members) {
      diff += (std::popcount(z & mask) % 2 == 0) ? 1 : -1;
    }
    const double bias = static_cast<double>(diff) / static_cast<double>(s.members.size());
    abs_sum += std::abs(bias);
    sq_sum += bias * bias;
  }
  out.mean_abs_bias = abs_sum / trials;
  out.mean_sq_bias = sq_sum / trials;
  // Var(|bias|) = E[bias^2] - E[|bias|]^2.
  const double var = std::max(0.0, out.mean_sq_bias - out.mean_abs_bias * out.mean_abs_bias);
  out.stderr_abs = std::sqrt(var / trials);
  fill_bounds(s, k, out);
  return out;
}

// ---------------------------------------------------------------------------
// Toy hiding experiment
// ---------------------------------------------------------------------------

MatrixEncoder constant_encoder() {
  return [](const BitMatrix&) { return std::uint64_t{0}; };
}

namespace {

std::uint64_t pack_prefix(const BitMatrix& m, int bits) {
  std::uint64_t out = 0;
  int taken = 0;
  for (int i = 0; i < m.rows() && taken < bits; ++i) {
    for (int j = 0; j < m.cols() && taken < bits; ++j) {
      out |= static_cast<std::uint64_t>(m.get(i, j) ? 1 : 0) << taken;
      ++taken;
    }
  }
  return out;
}

}  // namespace

MatrixEncoder identity_encoder() {
  return [](const BitMatrix& m) { return pack_prefix(m, m.rows() * m.cols()); };
}

MatrixEncoder prefix_encoder(int bits) {
  return [bits](const BitMatrix& m) { return pack_prefix(m, bits); };
}

namespace {

// Ordered vertex-disjoint families of `ell` k-sequences over the left
// side of matching j, enumerated as arrangements of k*ell of the r left
// vertices.
void enumerate_families(const std::vector<int>& lefts, int k, int ell,
                        std::vector<int>& arrangement, std::vector<bool>& used,
                        const std::function<void(const std::vector<int>&)>& emit) {
  if (static_cast<int>(arrangement.size()) == k * ell) {
    emit(arrangement);
    return;
  }
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    arrangement.push_back(lefts[i]);
    enumerate_families(lefts, k, ell, arrangement, used, emit);
    arrangement.pop_back();
    used[i] = false;
  }
}

// Canonical key of the non-encoded gadget edges: the matching index plus
// the sequences with internal order kept, sorted across sequences. Two
// families that differ only by sequence order produce identical edges.
using RemainderKey = std::pair<int, std::vector<std::vector<int>>>;

RemainderKey remainder_key(int j, const std::vector<int>& arrangement, int k, int ell) {
  std::vector<std::vector<int>> seqs(ell);
  for (int i = 0; i < ell; ++i) {
    seqs[i].assign(arrangement.begin() + static_cast<std::ptrdiff_t>(i) * k,
                   arrangement.begin() + static_cast<std::ptrdiff_t>(i + 1) * k);
  }
  std::sort(seqs.begin(), seqs.end());
  return {j, std::move(seqs)};
}

struct ConditionalLaw {
  std::map<RemainderKey, double> mass;
  double excluded = 0.0;  // matrices with no consistent pair
  double total = 0.0;     // matrices considered
};

double law_tvd(const ConditionalLaw& a, const ConditionalLaw& b) {
  const double za = a.total - a.excluded;
  const double zb = b.total - b.excluded;
  if (za <= 0.0 || zb <= 0.0) return za == zb ? 0.0 : 1.0;
  double sum = 0.0;
  auto ia = a.mass.begin();
  auto ib = b.mass.begin();
  while (ia != a.mass.end() || ib != b.mass.end()) {
    if (ib == b.mass.end() || (ia != a.mass.end() && ia->first < ib->first)) {
      sum += ia->second / za;
      ++ia;
    } else if (ia == a.mass.end() || ib->first < ia->first) {
      sum += ib->second / zb;
      ++ib;
    } else {
      sum += std::abs(ia->second / za - ib->second / zb);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

}  // namespace

std::vector<HidingRow> toy_hiding_campaign(const RSGraph& host, int k,
                                           const std::vector<std::uint8_t>& y1,
                                           const std::vector<std::uint8_t>& y2,
                                           const MatrixEncoder& encoder) {
  const int bits = host.r * host.t;
  if (bits > 20) throw std::invalid_argument("toy_hiding: r*t must be <= 20");
  if (y1.size() != y2.size()) throw std::invalid_argument("toy_hiding: target length mismatch");
  const int ell = static_cast<int>(y1.size());
  if (k < 1 || k * ell > host.r) throw std::invalid_argument("toy_hiding: k*ell must be <= r");

  // Precompute the row indices of every family arrangement per matching.
  struct FamilyEntry {
    std::vector<int> rows;  // k*ell row indices into the bit matrix
    RemainderKey key;
  };
  std::vector<std::vector<FamilyEntry>> families_per_matching(host.t);
  for (int j = 0; j < host.t; ++j) {
    std::vector<int> lefts;
    std::map<int, int> row;
    const auto& edges = host.matchings[j].edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      lefts.push_back(edges[i].left);
      row[edges[i].left] = static_cast<int>(i);
    }
    std::vector<int> arrangement;
    std::vector<bool> used(lefts.size(), false);
    enumerate_families(lefts, k, ell, arrangement, used, [&](const std::vector<int>& arr) {
      FamilyEntry entry;
      entry.rows.reserve(arr.size());
      for (int u : arr) entry.rows.push_back(row.at(u));
      entry.key = remainder_key(j, arr, k, ell);
      families_per_matching[j].push_back(std::move(entry));
    });
  }

  struct DigestAccum {
    ConditionalLaw law1, law2;
    std::size_t matrices = 0;
  };
  std::map<std::uint64_t, DigestAccum> accum;

  const std::size_t total_matrices = std::size_t{1} << bits;
  std::vector<const FamilyEntry*> consistent;
  for (std::size_t packed = 0; packed < total_matrices; ++packed) {
    BitMatrix m(host.r, host.t);
    for (int i = 0; i < host.r; ++i) {
      for (int j = 0; j < host.t; ++j) {
        m.set(i, j, (packed >> (static_cast<std::size_t>(i) * host.t + j)) & 1);
      }
    }
    DigestAccum& acc = accum[encoder(m)];
    acc.matrices += 1;

    for (int which = 0; which < 2; ++which) {
      const auto& y = which == 0 ? y1 : y2;
      ConditionalLaw& law = which == 0 ? acc.law1 : acc.law2;
      law.total += 1.0;
      consistent.clear();
      for (int j = 0; j < host.t; ++j) {
        for (const FamilyEntry& entry : families_per_matching[j]) {
          bool ok = true;
          for (int i = 0; i < ell && ok; ++i) {
            std::uint8_t parity = 0;
            for (int q = 0; q < k; ++q) {
              parity ^= m.get(entry.rows[static_cast<std::size_t>(i) * k + q], j) ? 1 : 0;
            }
            ok = parity == (y[i] & 1);
          }
          if (ok) consistent.push_back(&entry);
        }
      }
      if (consistent.empty()) {
        law.excluded += 1.0;
      } else {
        const double share = 1.0 / static_cast<double>(consistent.size());
        for (const FamilyEntry* entry : consistent) law.mass[entry->key] += share;
      }
    }
  }

  std::vector<HidingRow> rows;
  rows.reserve(accum.size());
  for (const auto& [digest, acc] : accum) {
    HidingRow row;
    row.digest = digest;
    row.digest_probability =
        static_cast<double>(acc.matrices) / static_cast<double>(total_matrices);
    row.tvd = law_tvd(acc.law1, acc.law2);
    row.excluded_mass_1 = acc.law1.excluded / acc.law1.total;
    row.excluded_mass_2 = acc.law2.excluded / acc.law2.total;
    rows.push_back(row);
  }
  return rows;
}

HidingRow toy_hiding_tvd(const RSGraph& host, int k, const std::vector<std::uint8_t>& y1,
                         const std::vector<std::uint8_t>& y2, const MatrixEncoder& encoder,
                         std::uint64_t observed) {
  const auto rows = toy_hiding_campaign(host, k, y1, y2, encoder);
  for (const HidingRow& row : rows) {
    if (row.digest == observed) return row;
  }
  throw std::invalid_argument("toy_hiding_tvd: digest value never occurs");
}

}  // namespace hmlab
