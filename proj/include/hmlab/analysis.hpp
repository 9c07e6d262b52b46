#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hmlab/encoded.hpp"
#include "hmlab/rng.hpp"

namespace hmlab {

// Explicit probability table over outcomes 0..size-1. Weights must be
// nonnegative and sum to 1 within 1e-12.
class FiniteDistribution {
 public:
  explicit FiniteDistribution(std::vector<double> weights);
  std::size_t size() const { return p_.size(); }
  double at(std::size_t i) const { return p_.at(i); }
  const std::vector<double>& weights() const { return p_; }
  std::size_t support_size() const;

 private:
  std::vector<double> p_;
};

// All information quantities are in bits (base-2 logarithms).
double entropy(const FiniteDistribution& d);
double binary_entropy(double delta);

// +infinity when mu puts mass outside the support of nu.
double kl_divergence(const FiniteDistribution& mu, const FiniteDistribution& nu);
double total_variation(const FiniteDistribution& mu, const FiniteDistribution& nu);
bool pinsker_check(const FiniteDistribution& mu, const FiniteDistribution& nu);

// Numerically verifies the pointwise near-uniformity implication: if all
// pairwise conditionals over the support lie in [(1-eps)/2, (1+eps)/2],
// then every point mass lies in [(1-2eps)/|supp|, (1+2eps)/|supp|].
// Vacuously true when the hypothesis fails.
bool pair_uniform_check(const FiniteDistribution& d, double eps);

// Real-valued function on {0,1}^n, n <= 24, stored as a table of 2^n
// values indexed by bitmask.
class BooleanFunction {
 public:
  BooleanFunction(int dimension, std::vector<double> values);
  int dimension() const { return n_; }
  double at(std::uint32_t x) const { return values_[x]; }
  const std::vector<double>& values() const { return values_; }
  std::size_t support_size() const;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

// Fourier coefficients indexed by subset bitmask: out[S] = 2^-n *
// sum_x f(x) * (-1)^{|x & S|}. Fast transform, O(n 2^n).
std::vector<double> walsh_fourier(const BooleanFunction& f);

// Reconstruction from coefficients: f(x) = sum_S out[S] * (-1)^{|x & S|}.
BooleanFunction inverse_walsh(int dimension, const std::vector<double>& coefficients);

// Checks sum_S gamma^|S| fhat(S)^2 <= (|supp f| / 2^n)^(2/(1+gamma)) for
// functions with values in {-1, 0, +1} and gamma in (0,1).
bool kkl_check(const BooleanFunction& f, double gamma);

// Nonempty subset of {0,1}^dimension, dimension <= 24.
struct SupportSet {
  int dimension = 0;
  std::vector<std::uint32_t> members;  // sorted, unique
};

SupportSet full_support(int dimension);
SupportSet even_parity_support(int dimension);

struct XorBiasResult {
  int k = 0;
  std::size_t subsets = 0;    // enumerated or sampled
  double mean_abs_bias = 0.0;
  double mean_sq_bias = 0.0;
  double stderr_abs = 0.0;    // sampled mode only
  // sqrt((c * log2(2^d / |s|) / d)^k) for c = 1, 2, 4: the decay shape
  // the squared-bias mean is compared against (the constant inside the
  // bound is not pinned down, so all three are reported).
  double bound_c1 = 0.0, bound_c2 = 0.0, bound_c4 = 0.0;
};

// Mean |P(xor = 0) - P(xor = 1)| over k-subsets of coordinates, with a
// uniform draw from the support set. Exact mode enumerates all C(d, k)
// subsets via one Walsh transform (d <= 20).
XorBiasResult xor_bias_exact(const SupportSet& s, int k);
XorBiasResult xor_bias_sampled(const SupportSet& s, int k, int trials, Rng& rng);

// ---------------------------------------------------------------------------
// Toy hiding experiment
// ---------------------------------------------------------------------------

// Deterministic digest of a bit matrix into `bits` output bits.
using MatrixEncoder = std::function<std::uint64_t(const BitMatrix&)>;

MatrixEncoder constant_encoder();
MatrixEncoder identity_encoder();        // all r*t bits, row-major
MatrixEncoder prefix_encoder(int bits);  // first `bits` bits, row-major

struct HidingRow {
  std::uint64_t digest = 0;
  double digest_probability = 0.0;  // mass of matrices mapping to this digest
  double tvd = 0.0;                 // between the two conditional gadget-remainder laws
  double excluded_mass_1 = 0.0;     // matrices with no consistent (index, family) pair
  double excluded_mass_2 = 0.0;
};

// Exact desk-scale version of the hiding statement: draw the bit matrix
// uniformly, condition on its digest, and compare the conditional
// distributions of the non-encoded gadget edges (stitches, pads,
// anchors) for two target parity vectors. Requires r*t <= 20.
// Matrices admitting no consistent (index, family) pair for a target are
// excluded from that conditional and reported as excluded mass.
std::vector<HidingRow> toy_hiding_campaign(const RSGraph& host, int k,
                                           const std::vector<std::uint8_t>& y1,
                                           const std::vector<std::uint8_t>& y2,
                                           const MatrixEncoder& encoder);

// Single-digest variant: the row for digest `observed`.
HidingRow toy_hiding_tvd(const RSGraph& host, int k, const std::vector<std::uint8_t>& y1,
                         const std::vector<std::uint8_t>& y2, const MatrixEncoder& encoder,
                         std::uint64_t observed);

}  // namespace hmlab
