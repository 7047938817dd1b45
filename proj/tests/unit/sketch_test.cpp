#include <cmath>
#include <map>
#include <stdexcept>

#include "congesim/sketch/l0_sketch.hpp"
#include "doctest.h"

using namespace congesim;
using namespace congesim::sketch;

namespace {

L0Config small_cfg() {
  L0Config cfg;
  cfg.universe_bits = 10;
  cfg.levels = 12;
  cfg.hash_independence = 8;
  return cfg;
}

SignedStream random_stream(uint64_t seed, int len, int universe) {
  RngStream rng(seed, 0);
  SignedStream s;
  for (int i = 0; i < len; ++i)
    s.push_back({rng.below(uint64_t(universe)), rng.below(2) ? int64_t(1) : int64_t(-1)});
  return s;
}

std::map<uint64_t, int64_t> support_of(const SignedStream& s) {
  std::map<uint64_t, int64_t> m;
  for (const auto& e : s) m[e.element] += e.delta;
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

}  // namespace

TEST_CASE("singleton support recovers exactly") {
  L0Sketch sk(small_cfg(), 42);
  sk.update(5, 3);
  auto q = sk.query();
  CHECK_FALSE(q.failed);
  CHECK_FALSE(q.empty);
  CHECK(q.element == 5);
  CHECK(q.frequency == 3);
}

TEST_CASE("cancelled stream reports empty") {
  L0Sketch sk(small_cfg(), 42);
  sk.update(5, 2);
  sk.update(7, 1);
  sk.update(5, -2);
  sk.update(7, -1);
  auto q = sk.query();
  CHECK(q.empty);
  CHECK_FALSE(q.failed);
}

TEST_CASE("merge equals sketching the concatenated stream") {
  auto cfg = small_cfg();
  for (uint64_t rid = 1; rid <= 20; ++rid) {
    auto sa = random_stream(100 + rid, 60, 1 << cfg.universe_bits);
    auto sb = random_stream(200 + rid, 60, 1 << cfg.universe_bits);
    L0Sketch a(cfg, rid), b(cfg, rid), whole(cfg, rid);
    a.update(sa);
    b.update(sb);
    whole.update(sa);
    whole.update(sb);
    CHECK(L0Sketch::merge(a, b) == whole);
  }
}

TEST_CASE("merge rejects mismatched randomness or config") {
  auto cfg = small_cfg();
  L0Sketch a(cfg, 1), b(cfg, 2);
  CHECK_THROWS_AS(L0Sketch::merge(a, b), std::invalid_argument);
  auto cfg2 = cfg;
  cfg2.levels += 1;
  L0Sketch c(cfg2, 1);
  CHECK_THROWS_AS(L0Sketch::merge(a, c), std::invalid_argument);
}

TEST_CASE("queries land in the true support with the true frequency") {
  auto cfg = small_cfg();
  int failures = 0;
  for (uint64_t rid = 1; rid <= 300; ++rid) {
    auto s = random_stream(rid, 40, 1 << cfg.universe_bits);
    auto sup = support_of(s);
    if (sup.empty()) continue;
    L0Sketch sk(cfg, rid);
    sk.update(s);
    auto q = sk.query();
    CHECK_FALSE(q.empty);
    if (q.failed) {
      ++failures;
      continue;
    }
    REQUIRE(sup.count(q.element) == 1);
    CHECK(sup[q.element] == q.frequency);
  }
  // 12 independent level stacks push the failure rate to ~3^-12
  CHECK(failures == 0);
}

TEST_CASE("returned element is near-uniform on the support") {
  auto cfg = small_cfg();
  SignedStream s;
  for (uint64_t e = 1; e <= 8; ++e) s.push_back({e, 1});
  std::map<uint64_t, int> hits;
  int ok = 0;
  for (uint64_t rid = 0; rid < 2000; ++rid) {
    L0Sketch sk(cfg, rid);
    sk.update(s);
    auto q = sk.query();
    if (q.failed) continue;
    ++hits[q.element];
    ++ok;
  }
  REQUIRE(ok > 1990);
  double tv = 0;
  for (uint64_t e = 1; e <= 8; ++e) tv += std::abs(double(hits[e]) / ok - 0.125);
  CHECK(tv / 2 < 0.05);
}

TEST_CASE("serialization round-trips") {
  auto cfg = small_cfg();
  auto s = random_stream(7, 50, 1 << cfg.universe_bits);
  L0Sketch sk(cfg, 9);
  sk.update(s);
  auto back = L0Sketch::deserialize(cfg, sk.serialize());
  CHECK(back == sk);
  CHECK(back.query().element == sk.query().element);
}

TEST_CASE("size parameters scale with the declared failure target") {
  auto cfg = L0Config::for_size(16, 12);
  CHECK(cfg.levels == 12);  // 3 * ceil(log2 16)
  CHECK(cfg.repetitions == 12);
  CHECK(cfg.universe_bits == 12);
  CHECK(L0Config::for_size(64, 16).levels == 18);
  L0Sketch sk(cfg, 1);
  CHECK(sk.bit_size() > 0);
}
