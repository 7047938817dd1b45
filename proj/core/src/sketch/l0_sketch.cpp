#include "congesim/sketch/l0_sketch.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace congesim::sketch {

namespace {
int ceil_log2(int n) {
  int b = 0;
  while ((1 << b) < n) ++b;
  return b;
}

uint64_t mulmod_p(uint64_t a, uint64_t b, uint64_t p) {
  return uint64_t((unsigned __int128)(a % p) * (b % p) % p);
}
}  // namespace

L0Config L0Config::for_size(int n_param, int universe_bits) {
  L0Config cfg;
  cfg.universe_bits = universe_bits;
  cfg.levels = std::max(4, 3 * ceil_log2(std::max(2, n_param)));
  cfg.repetitions = cfg.levels;
  cfg.hash_independence = std::max(6, 3 * ceil_log2(std::max(2, n_param)) + 2);
  return cfg;
}

L0Sketch::L0Sketch(const L0Config& cfg, uint64_t randomness_id)
    : cfg_(cfg), rid_(randomness_id), levels_(size_t(cfg.repetitions) * cfg.levels) {
  if (cfg.universe_bits < 1 || cfg.universe_bits > 63)
    throw std::invalid_argument("l0 sketch: universe_bits must be in [1,63]");
  if (cfg.levels < 1 || cfg.repetitions < 1)
    throw std::invalid_argument("l0 sketch: levels and repetitions must be >= 1");
  if (cfg.universe_bits <= 32) {
    int out_bits = std::min(cfg.levels, 32);
    gf::HashFamily fam(cfg.universe_bits, out_bits, cfg.hash_independence);
    Prf prf{rid_};
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      std::vector<uint64_t> seed(cfg.hash_independence);
      for (size_t i = 0; i < seed.size(); ++i) seed[i] = prf.at(0x6c766c, uint64_t(rep), i);
      level_hash_.push_back(fam.from_seed(seed));
    }
  }
}

int L0Sketch::level_of(int rep, uint64_t element) const {
  uint64_t h;
  if (!level_hash_.empty()) {
    h = level_hash_[rep](element);
  } else {
    h = Prf{rid_}.at(0x6c766c, uint64_t(rep), element);
  }
  // trailing zeros, capped at the deepest level
  int tz = h == 0 ? 64 : std::countr_zero(h);
  return std::min(tz, cfg_.levels - 1);
}

uint64_t L0Sketch::phi(uint64_t element) const {
  return Prf{rid_}.at(0x6670, element) % kFpPrime;
}

void L0Sketch::update(uint64_t element, int64_t delta) {
  if (element >> cfg_.universe_bits)
    throw std::invalid_argument("l0 sketch: element outside universe");
  if (delta == 0) return;
  uint64_t f = phi(element);
  uint64_t d = delta >= 0 ? uint64_t(delta) % kFpPrime : kFpPrime - uint64_t(-delta) % kFpPrime;
  uint64_t fp_inc = mulmod_p(d, f, kFpPrime);
  auto w_inc = (unsigned __int128)((__int128)delta * (__int128)element);
  for (int rep = 0; rep < cfg_.repetitions; ++rep) {
    int top = level_of(rep, element);
    for (int l = 0; l <= top; ++l) {
      Level& lv = at(rep, l);
      lv.count += delta;
      lv.wsum += w_inc;
      lv.fingerprint = (lv.fingerprint + fp_inc) % kFpPrime;
    }
  }
}

void L0Sketch::update(const SignedStream& stream) {
  for (const auto& e : stream) update(e.element, e.delta);
}

L0Sketch L0Sketch::merge(const L0Sketch& a, const L0Sketch& b) {
  if (a.rid_ != b.rid_)
    throw std::invalid_argument("l0 sketch merge: randomness ids differ");
  if (a.cfg_.universe_bits != b.cfg_.universe_bits || a.cfg_.levels != b.cfg_.levels ||
      a.cfg_.repetitions != b.cfg_.repetitions ||
      a.cfg_.hash_independence != b.cfg_.hash_independence)
    throw std::invalid_argument("l0 sketch merge: configs differ");
  L0Sketch out = a;
  for (size_t i = 0; i < out.levels_.size(); ++i) {
    out.levels_[i].count += b.levels_[i].count;
    out.levels_[i].wsum += b.levels_[i].wsum;
    out.levels_[i].fingerprint = (out.levels_[i].fingerprint + b.levels_[i].fingerprint) % kFpPrime;
  }
  return out;
}

L0Query L0Sketch::query() const {
  bool all_zero = true;
  for (const auto& lv : levels_)
    if (lv.count != 0 || lv.wsum != 0 || lv.fingerprint != 0) { all_zero = false; break; }
  if (all_zero) {
    L0Query q;
    q.empty = true;
    return q;
  }
  for (int rep = 0; rep < cfg_.repetitions; ++rep) {
    for (int l = cfg_.levels - 1; l >= 0; --l) {
      const Level& lv = at(rep, l);
      if (lv.count == 0) continue;
      // candidate element = wsum / count, exact signed division
      __int128 w = (__int128)lv.wsum;
      __int128 c = lv.count;
      if (w % c != 0) continue;
      __int128 e = w / c;
      if (e < 0 || (uint64_t(e) >> cfg_.universe_bits)) continue;
      uint64_t elem = uint64_t(e);
      uint64_t d = lv.count >= 0 ? uint64_t(lv.count) % kFpPrime
                                 : kFpPrime - uint64_t(-lv.count) % kFpPrime;
      if (lv.fingerprint != mulmod_p(d, phi(elem), kFpPrime)) continue;
      if (level_of(rep, elem) < l) continue;  // element cannot live at this level
      L0Query q;
      q.element = elem;
      q.frequency = lv.count;
      return q;
    }
  }
  L0Query q;
  q.failed = true;
  return q;
}

size_t L0Sketch::bit_size() const {
  return levels_.size() * (64 + 128 + 64) + 64;
}

bool L0Sketch::operator==(const L0Sketch& o) const {
  return rid_ == o.rid_ && cfg_.universe_bits == o.cfg_.universe_bits &&
         cfg_.levels == o.cfg_.levels && cfg_.repetitions == o.cfg_.repetitions &&
         levels_ == o.levels_;
}

std::vector<uint64_t> L0Sketch::serialize() const {
  std::vector<uint64_t> out;
  out.push_back(rid_);
  for (const auto& lv : levels_) {
    out.push_back(uint64_t(lv.count));
    out.push_back(uint64_t(lv.wsum & ~uint64_t(0)));
    out.push_back(uint64_t(lv.wsum >> 64));
    out.push_back(lv.fingerprint);
  }
  return out;
}

L0Sketch L0Sketch::deserialize(const L0Config& cfg, const std::vector<uint64_t>& words) {
  if (words.size() != 1 + size_t(cfg.repetitions) * cfg.levels * 4)
    throw std::invalid_argument("l0 sketch: bad serialization size");
  L0Sketch s(cfg, words[0]);
  for (size_t i = 0; i < s.levels_.size(); ++i) {
    const uint64_t* w = &words[1 + i * 4];
    s.levels_[i].count = int64_t(w[0]);
    s.levels_[i].wsum = ((unsigned __int128)w[2] << 64) | w[1];
    s.levels_[i].fingerprint = w[3];
  }
  return s;
}

}  // namespace congesim::sketch
