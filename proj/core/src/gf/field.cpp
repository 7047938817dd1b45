#include "congesim/gf/field.hpp"

#include <stdexcept>
#include <string>

namespace congesim::gf {

uint64_t modulus_for_width(int k) {
  // Bit i = coefficient of x^i. One fixed irreducible polynomial per width.
  static const uint64_t table[33] = {
      0,
      0x3,         // x + 1
      0x7,         // x^2+x+1
      0xb,         // x^3+x+1
      0x13,        // x^4+x+1
      0x25,        // x^5+x^2+1
      0x43,        // x^6+x+1
      0x89,        // x^7+x^3+1
      0x11b,       // x^8+x^4+x^3+x+1
      0x211,       // x^9+x^4+1
      0x409,       // x^10+x^3+1
      0x805,       // x^11+x^2+1
      0x1053,      // x^12+x^6+x^4+x+1
      0x201b,      // x^13+x^4+x^3+x+1
      0x4143,      // x^14+x^8+x^6+x+1
      0x8003,      // x^15+x+1
      0x1100b,     // x^16+x^12+x^3+x+1
      0x2009,      // placeholder, replaced below
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  static const uint64_t high[] = {
      /* 17 */ 0x20009,    // x^17+x^3+1
      /* 18 */ 0x40081,    // x^18+x^7+1
      /* 19 */ 0x80027,    // x^19+x^5+x^2+x+1
      /* 20 */ 0x100009,   // x^20+x^3+1
      /* 21 */ 0x200005,   // x^21+x^2+1
      /* 22 */ 0x400003,   // x^22+x+1
      /* 23 */ 0x800021,   // x^23+x^5+1
      /* 24 */ 0x100001b,  // x^24+x^4+x^3+x+1
      /* 25 */ 0x2000009,  // x^25+x^3+1
      /* 26 */ 0x4000047,  // x^26+x^6+x^2+x+1
      /* 27 */ 0x8000027,  // x^27+x^5+x^2+x+1
      /* 28 */ 0x10000009, // x^28+x^3+1
      /* 29 */ 0x20000005, // x^29+x^2+1
      /* 30 */ 0x40000053, // x^30+x^6+x^4+x+1
      /* 31 */ 0x80000009, // x^31+x^3+1
      /* 32 */ 0x10000008dULL,  // x^32+x^7+x^3+x^2+1
  };
  if (k < 1 || k > 32) throw std::invalid_argument("field width must be in [1,32]");
  if (k <= 16) return table[k];
  return high[k - 17];
}

Field::Field(int width) : Field(width, modulus_for_width(width)) {}

Field::Field(int width, uint64_t modulus) : k_(width), mod_(modulus) {
  if (k_ < 1 || k_ > 32) throw std::invalid_argument("field width must be in [1,32]");
  if ((mod_ >> k_) != 1) throw std::invalid_argument("modulus degree must equal field width");
  if (k_ <= 16 && k_ >= 2) build_tables();
}

uint64_t Field::mul_slow(uint64_t a, uint64_t b) const {
  a &= mask();
  b &= mask();
  uint64_t r = 0;
  for (int i = 0; i < k_; ++i)
    if ((b >> i) & 1) r ^= a << i;
  for (int i = 2 * k_ - 2; i >= k_; --i)
    if ((r >> i) & 1) r ^= mod_ << (i - k_);
  return r;
}

void Field::build_tables() {
  uint64_t n = order();
  exp_ = std::make_shared<std::vector<uint32_t>>();
  log_ = std::make_shared<std::vector<uint32_t>>(n, 0);
  // Find a multiplicative generator by trial.
  for (uint64_t g = 2; g < n; ++g) {
    exp_->assign(1, 1);
    std::vector<uint32_t>& e = *exp_;
    uint64_t x = 1;
    bool ok = true;
    for (uint64_t i = 1; i < n - 1; ++i) {
      x = mul_slow(x, g);
      if (x == 1) { ok = false; break; }
      e.push_back(uint32_t(x));
    }
    if (ok) {
      for (uint64_t i = 0; i < n - 1; ++i) (*log_)[e[i]] = uint32_t(i);
      return;
    }
  }
  throw std::logic_error("no generator found; modulus not primitive/irreducible?");
}

uint64_t Field::mul(uint64_t a, uint64_t b) const {
  a &= mask();
  b &= mask();
  if (a == 0 || b == 0) return 0;
  if (exp_) {
    uint64_t s = uint64_t((*log_)[a]) + uint64_t((*log_)[b]);
    uint64_t m = order() - 1;
    if (s >= m) s -= m;
    return (*exp_)[s];
  }
  return mul_slow(a, b);
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
  a &= mask();
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t Field::inv(uint64_t a) const {
  a &= mask();
  if (a == 0) throw std::domain_error("inverse of zero in GF(2^" + std::to_string(k_) + ")");
  if (exp_) {
    uint64_t m = order() - 1;
    uint64_t l = (*log_)[a];
    return (*exp_)[(m - l) % m];
  }
  return pow(a, order() - 2);
}

uint64_t Field::eval_poly(const std::vector<uint64_t>& coeffs, uint64_t x) const {
  uint64_t y = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) y = add(mul(y, x), *it);
  return y;
}

}  // namespace congesim::gf
