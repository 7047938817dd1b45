#pragma once

#include <cstdint>
#include <vector>

#include "congesim/gf/field.hpp"
#include "congesim/rng.hpp"

// j-wise independent hash families {0,1}^a -> {0,1}^b.
//
// A sampled hash is a uniform polynomial of degree < j over GF(2^w) with
// w = max(a,b); h(x) is the low b bits of the evaluation at x. Sampling
// consumes exactly j*w random bits. For any j distinct inputs the outputs
// are jointly uniform (Vandermonde invertibility), which is the textbook
// polynomial construction.

namespace congesim::gf {

class JwiseHash {
 public:
  JwiseHash(const Field& f, std::vector<uint64_t> coeffs, int out_bits);

  uint64_t operator()(uint64_t x) const;
  const std::vector<uint64_t>& coefficients() const { return coeffs_; }

 private:
  Field f_;
  std::vector<uint64_t> coeffs_;
  uint64_t out_mask_;
};

class HashFamily {
 public:
  // a = input bits, b = output bits, j = independence. Requires
  // max(a,b) <= 32.
  HashFamily(int in_bits, int out_bits, int independence);

  int in_bits() const { return a_; }
  int out_bits() const { return b_; }
  int independence() const { return j_; }
  int seed_bits() const { return j_ * w_; }
  const Field& field() const { return f_; }

  JwiseHash sample(RngStream& rng) const;
  // Seed as j words of max(a,b) bits each (low-to-high coefficient order).
  JwiseHash from_seed(const std::vector<uint64_t>& words) const;

 private:
  int a_, b_, j_, w_;
  Field f_;
};

}  // namespace congesim::gf
