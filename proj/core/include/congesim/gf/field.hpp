#pragma once

#include <cstdint>
#include <memory>
#include <vector>

// Binary extension field arithmetic GF(2^k) for 1 <= k <= 32.
//
// Elements are the low k bits of a uint64_t, interpreted as polynomials over
// GF(2). Addition is xor. Multiplication reduces modulo a fixed irreducible
// polynomial per width (see modulus_for_width). For k <= 16 a log/exp table
// pair accelerates mul/inv; larger widths use shift-and-reduce.

namespace congesim::gf {

// Irreducible polynomial for GF(2^k), bit i = coefficient of x^i.
// Low-weight standard choices, e.g. k=3 -> x^3 + x + 1 (0b1011).
uint64_t modulus_for_width(int k);

class Field {
 public:
  explicit Field(int width);
  Field(int width, uint64_t modulus);

  int width() const { return k_; }
  uint64_t modulus() const { return mod_; }
  // Number of field elements, 2^k.
  uint64_t order() const { return uint64_t(1) << k_; }
  uint64_t mask() const { return (uint64_t(1) << k_) - 1; }

  uint64_t add(uint64_t a, uint64_t b) const { return (a ^ b) & mask(); }
  uint64_t sub(uint64_t a, uint64_t b) const { return (a ^ b) & mask(); }
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t pow(uint64_t a, uint64_t e) const;
  // Multiplicative inverse; throws std::domain_error on 0.
  uint64_t inv(uint64_t a) const;
  uint64_t div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }

  // Evaluate polynomial coeffs[0] + coeffs[1] x + ... at x (Horner).
  uint64_t eval_poly(const std::vector<uint64_t>& coeffs, uint64_t x) const;

  bool operator==(const Field& o) const {
    return k_ == o.k_ && mod_ == o.mod_;
  }

 private:
  uint64_t mul_slow(uint64_t a, uint64_t b) const;
  void build_tables();

  int k_;
  uint64_t mod_;
  // log/exp tables for k <= 16 (exp_ has 2^k entries, log_[0] unused).
  std::shared_ptr<std::vector<uint32_t>> exp_, log_;
};

}  // namespace congesim::gf
