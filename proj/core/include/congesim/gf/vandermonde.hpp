#pragma once

#include <cstdint>
#include <vector>

#include "congesim/gf/field.hpp"

// Randomness extraction through Vandermonde matrices.
//
// M is the n x (n-t) matrix with M[j][i] = alpha_j^i, where alpha_1..alpha_n
// are the first n non-zero field elements in numeric order. Given n symbols
// x_1..x_n of which at least n-t are uniform and independent (the other t
// arbitrary, even adversarially fixed), the products y_i = sum_j M[j][i] x_j
// are n-t uniform independent symbols. Requires n <= 2^k - 1.

namespace congesim::gf {

class Vandermonde {
 public:
  // n rows, n-t columns.
  Vandermonde(const Field& f, int n, int t);

  int rows() const { return n_; }
  int cols() const { return cols_; }
  uint64_t entry(int row, int col) const;

  // y_i = sum_j entry(j, i) * x_j for i in [0, n-t).
  std::vector<uint64_t> apply(const std::vector<uint64_t>& x) const;

 private:
  Field f_;
  int n_, cols_;
  std::vector<uint64_t> m_;  // row-major
};

// Convenience wrapper: extract n-t uniform symbols out of n partially
// compromised ones.
std::vector<uint64_t> extract_uniform(const Field& f,
                                      const std::vector<uint64_t>& x, int t);

}  // namespace congesim::gf
