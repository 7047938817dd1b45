#include "congesim/gf/hashing.hpp"

#include <stdexcept>

namespace congesim::gf {

JwiseHash::JwiseHash(const Field& f, std::vector<uint64_t> coeffs, int out_bits)
    : f_(f), coeffs_(std::move(coeffs)) {
  out_mask_ = out_bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << out_bits) - 1;
}

uint64_t JwiseHash::operator()(uint64_t x) const {
  return f_.eval_poly(coeffs_, x & f_.mask()) & out_mask_;
}

HashFamily::HashFamily(int in_bits, int out_bits, int independence)
    : a_(in_bits), b_(out_bits), j_(independence),
      w_(std::max(in_bits, out_bits)), f_(std::max(in_bits, out_bits)) {
  if (a_ < 1 || b_ < 1 || j_ < 1)
    throw std::invalid_argument("hash family: in_bits, out_bits, independence must be >= 1");
  if (w_ > 32) throw std::invalid_argument("hash family: max(in_bits, out_bits) must be <= 32");
}

JwiseHash HashFamily::sample(RngStream& rng) const {
  std::vector<uint64_t> coeffs(j_);
  for (int i = 0; i < j_; ++i) coeffs[i] = rng.bits(w_);
  return JwiseHash(f_, std::move(coeffs), b_);
}

JwiseHash HashFamily::from_seed(const std::vector<uint64_t>& words) const {
  if (int(words.size()) != j_)
    throw std::invalid_argument("hash family: seed must have exactly j words");
  std::vector<uint64_t> coeffs(j_);
  for (int i = 0; i < j_; ++i) coeffs[i] = words[i] & f_.mask();
  return JwiseHash(f_, std::move(coeffs), b_);
}

}  // namespace congesim::gf
