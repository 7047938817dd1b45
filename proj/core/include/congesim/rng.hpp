#pragma once

#include <cstdint>

// Deterministic counter-based randomness.
//
// Every random draw in the simulator is a pure function of (master seed,
// stream labels, counter). This keeps executions replayable regardless of
// evaluation order: two runs with the same seed produce identical traffic,
// identical adversary choices, and identical reports.

namespace congesim {

// splitmix64 finalizer; good avalanche, cheap, stateless.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Keyed PRF over up to three 64-bit labels.
struct Prf {
  uint64_t key = 0;

  uint64_t at(uint64_t a, uint64_t b = 0, uint64_t c = 0) const {
    uint64_t h = mix64(key ^ 0x426f62627953696dULL);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
  }
};

// Sequential stream view over a Prf; `label` picks the stream.
struct RngStream {
  Prf prf;
  uint64_t label = 0;
  uint64_t counter = 0;

  explicit RngStream(uint64_t seed = 0, uint64_t stream_label = 0)
      : prf{seed}, label(stream_label) {}

  uint64_t next() { return prf.at(label, counter++); }

  // Uniform word of `width` bits, width in [0, 64].
  uint64_t bits(int width) {
    if (width <= 0) return 0;
    uint64_t w = next();
    return width >= 64 ? w : (w & ((uint64_t(1) << width) - 1));
  }

  // Uniform integer in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t w;
    do {
      w = next();
    } while (w >= limit);
    return w % n;
  }

  double unit() { return double(next() >> 11) * 0x1.0p-53; }
};

}  // namespace congesim
