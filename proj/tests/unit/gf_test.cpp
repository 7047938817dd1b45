#include <map>
#include <set>
#include <stdexcept>

#include "congesim/gf/field.hpp"
#include "congesim/gf/hashing.hpp"
#include "congesim/gf/reed_solomon.hpp"
#include "congesim/gf/vandermonde.hpp"
#include "doctest.h"

using namespace congesim;
using namespace congesim::gf;

TEST_CASE("GF(2^3) product matches hand-reduced value") {
  Field f(3);
  CHECK(f.mul(0b010, 0b110) == 0b111);
}

TEST_CASE("GF(4) multiplication table") {
  Field f(2);
  uint64_t want[4][4] = {
      {0, 0, 0, 0},
      {0, 1, 2, 3},
      {0, 2, 3, 1},
      {0, 3, 1, 2},
  };
  for (uint64_t a = 0; a < 4; ++a)
    for (uint64_t b = 0; b < 4; ++b) CHECK(f.mul(a, b) == want[a][b]);
}

TEST_CASE("field axioms hold exhaustively on GF(8)") {
  Field f(3);
  for (uint64_t a = 0; a < 8; ++a)
    for (uint64_t b = 0; b < 8; ++b) {
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (uint64_t c = 0; c < 8; ++c) {
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  for (uint64_t a = 1; a < 8; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, 7) == 1);
  }
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
}

TEST_CASE("table-free widths agree with table widths") {
  Field small(12);
  Field big(24);
  for (uint64_t a : {uint64_t(1), uint64_t(0x5a3), uint64_t(0xfff)})
    for (uint64_t b : {uint64_t(2), uint64_t(0x7b1), uint64_t(0x801)}) {
      CHECK(small.mul(small.mul(a, b), small.inv(b)) == a);
      CHECK(big.mul(big.mul(a, b), big.inv(b)) == a);
    }
}

TEST_CASE("extraction matrix fixed values") {
  Field f4(2), f8(3);
  CHECK(extract_uniform(f4, {1, 2}, 1) == std::vector<uint64_t>{3});
  CHECK(extract_uniform(f8, {1, 2, 3}, 1) == std::vector<uint64_t>{0, 0});
}

TEST_CASE("extraction output is a bijection of any single free symbol") {
  // n = 3, t = 2 over GF(8): fix two adversarial symbols, vary the third.
  // Each output coordinate must then hit every field element exactly once,
  // i.e. one uniform input already forces a uniform output.
  Field f(3);
  for (int free = 0; free < 3; ++free)
    for (uint64_t fix1 = 0; fix1 < 8; ++fix1)
      for (uint64_t fix2 = 0; fix2 < 8; ++fix2) {
        std::set<uint64_t> seen;
        for (uint64_t x = 0; x < 8; ++x) {
          std::vector<uint64_t> in(3);
          int slot = 0;
          for (int j = 0; j < 3; ++j)
            if (j != free) in[j] = slot++ ? fix2 : fix1;
          in[free] = x;
          auto out = extract_uniform(f, in, 2);
          REQUIRE(out.size() == 1);
          seen.insert(out[0]);
        }
        CHECK(seen.size() == 8);
      }
}

TEST_CASE("Reed-Solomon fixed encodings") {
  Field f8(3), f16(4);
  RsCode small(f8, 2, 4);
  CHECK(small.encode({1, 2}) == std::vector<uint64_t>{3, 5, 7, 2});
  RsCode wide(f16, 2, 6);
  CHECK(wide.encode({3, 5}) == std::vector<uint64_t>{6, 9, 12, 4, 1, 14});
  CHECK(small.relative_distance() == doctest::Approx(3.0 / 4.0));
  CHECK(small.unique_radius() == 1);
  CHECK(wide.unique_radius() == 2);
}

TEST_CASE("decoding recovers all patterns within the unique radius") {
  Field f(4);
  RsCode code(f, 2, 6);
  std::vector<uint64_t> msg = {7, 11};
  auto word = code.encode(msg);
  // all error patterns of weight <= 2 (positions and values exhaustive)
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j)
      for (uint64_t ei = 1; ei < 16; ++ei)
        for (uint64_t ej = 1; ej < 16; ++ej) {
          if (i == j && ei != ej) continue;
          auto rx = word;
          rx[i] ^= ei;
          if (j != i) rx[j] ^= ej;
          auto got = code.decode(rx);
          CHECK(got.ok);
          CHECK_FALSE(got.ambiguous);
          CHECK(got.message == msg);
          auto bw = code.decode_berlekamp_welch(rx);
          CHECK(bw.ok);
          CHECK(bw.message == msg);
        }
}

TEST_CASE("decoding beyond the radius is flagged, ties pick the smallest message") {
  Field f(2);
  RsCode rep(f, 1, 2);  // codewords (m, m); any disagreement is a tie
  auto got = rep.decode({1, 3});
  CHECK_FALSE(got.ok);
  CHECK(got.ambiguous);
  CHECK(got.message == std::vector<uint64_t>{1});
  CHECK(got.distance == 1);
}

TEST_CASE("exhaustive and algebraic decoders agree on random noise") {
  Field f(4);
  RsCode code(f, 3, 9);
  RngStream rng(0xdecade, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<uint64_t> msg = {rng.bits(4), rng.bits(4), rng.bits(4)};
    auto word = code.encode(msg);
    int weight = int(rng.below(uint64_t(code.unique_radius() + 1)));
    std::set<int> pos;
    while (int(pos.size()) < weight) pos.insert(int(rng.below(9)));
    for (int p : pos) word[p] ^= (rng.bits(4) | 1);
    auto a = code.decode_exhaustive(word);
    auto b = code.decode_berlekamp_welch(word);
    CHECK(a.ok);
    CHECK(b.ok);
    CHECK(a.message == b.message);
    CHECK(a.message == msg);
  }
}

TEST_CASE("polynomial hash fixed value") {
  Field f(2);
  JwiseHash h(f, {1, 2}, 2);
  CHECK(h(3) == 0);
}

TEST_CASE("pairwise family is exactly uniform on output pairs") {
  // 2 bits in, 2 bits out, independence 2: over all 16 seeds every pair of
  // distinct inputs must produce each output pair exactly once.
  HashFamily fam(2, 2, 2);
  REQUIRE(fam.seed_bits() == 4);
  for (uint64_t x1 = 0; x1 < 4; ++x1)
    for (uint64_t x2 = 0; x2 < 4; ++x2) {
      if (x1 == x2) continue;
      std::map<std::pair<uint64_t, uint64_t>, int> counts;
      for (uint64_t c0 = 0; c0 < 4; ++c0)
        for (uint64_t c1 = 0; c1 < 4; ++c1) {
          auto h = fam.from_seed({c0, c1});
          ++counts[{h(x1), h(x2)}];
        }
      CHECK(counts.size() == 16);
      for (auto& [k, c] : counts) CHECK(c == 1);
    }
}

TEST_CASE("family seed sizing and width guard") {
  CHECK(HashFamily(3, 2, 4).seed_bits() == 12);
  CHECK(HashFamily(16, 8, 6).seed_bits() == 96);
  CHECK_THROWS_AS(HashFamily(40, 2, 2), std::invalid_argument);
}

TEST_CASE("sampling a hash consumes the declared number of bits") {
  HashFamily fam(4, 4, 3);
  RngStream a(77, 9), b(77, 9);
  auto h1 = fam.sample(a);
  auto h2 = fam.sample(b);
  for (uint64_t x = 0; x < 16; ++x) CHECK(h1(x) == h2(x));
  CHECK(a.counter == b.counter);
}
