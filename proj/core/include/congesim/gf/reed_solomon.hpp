#pragma once

#include <cstdint>
#include <vector>

#include "congesim/gf/field.hpp"

// Reed-Solomon codes over GF(2^k), evaluation form.
//
// A message of msg_len symbols is the coefficient vector of a polynomial of
// degree < msg_len; the codeword is its evaluation at the first block_len
// non-zero field elements in numeric order. Minimum distance is
// block_len - msg_len + 1 (MDS), so any error pattern of weight
// < (block_len - msg_len + 1) / 2 decodes uniquely.

namespace congesim::gf {

struct RsDecodeResult {
  std::vector<uint64_t> message;
  // Hamming distance between the received word and the decoded codeword.
  int distance = 0;
  // True when decoding is reliable (within unique-decoding radius).
  bool ok = false;
  // True when the result was a tie or a best-effort guess beyond the radius.
  bool ambiguous = false;
};

class RsCode {
 public:
  RsCode(const Field& f, int msg_len, int block_len);

  int msg_len() const { return l_; }
  int block_len() const { return k_; }
  const Field& field() const { return f_; }
  // (block_len - msg_len + 1) / block_len
  double relative_distance() const { return double(k_ - l_ + 1) / double(k_); }
  // Largest error weight that always decodes: ceil(d/2) - 1.
  int unique_radius() const { return (k_ - l_) / 2; }

  std::vector<uint64_t> encode(const std::vector<uint64_t>& msg) const;

  // Nearest-codeword decoding. Routes to exhaustive search for small message
  // spaces (q^msg_len <= exhaustive_limit), Berlekamp-Welch otherwise. Ties
  // beyond the unique radius resolve to the lexicographically smallest
  // message and are flagged ambiguous.
  RsDecodeResult decode(const std::vector<uint64_t>& received) const;

  // Both routes exposed for cross-checking.
  RsDecodeResult decode_exhaustive(const std::vector<uint64_t>& received) const;
  RsDecodeResult decode_berlekamp_welch(const std::vector<uint64_t>& received) const;

  static constexpr uint64_t exhaustive_limit = uint64_t(1) << 12;

 private:
  Field f_;
  int l_, k_;
  std::vector<uint64_t> points_;
};

}  // namespace congesim::gf
