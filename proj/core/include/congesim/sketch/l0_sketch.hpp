#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "congesim/gf/hashing.hpp"
#include "congesim/rng.hpp"

// Linear l0-sampling sketches for signed element streams.
//
// A sketch is a stack of per-level one-sparse recovery states, repeated
// `repetitions` times with independent level hashes. Level l of a repetition
// subsamples the universe by keeping elements whose level hash has at least
// l trailing zero bits; each level stores the linear triple
// (count, weighted element sum, fingerprint). Two sketches built with the
// same randomness id merge component-wise, and the merged sketch is
// bit-identical to a sketch built directly on the concatenated stream.
// Query scans each repetition from the sparsest level down and returns the
// first recovered (element, frequency); over the randomness id the returned
// element is close to uniform on the support. A single stack recovers only
// with constant probability (two support elements collide on every level
// with probability 1/3), so the repetitions are what push the explicit
// failure signal below the 1/poly target: 3*log2(n) of them give roughly
// n^-4.7. Empty support is reported separately from failure.

namespace congesim::sketch {

struct StreamEntry {
  uint64_t element = 0;
  int64_t delta = 0;
};
using SignedStream = std::vector<StreamEntry>;

struct L0Config {
  int universe_bits = 16;  // elements live in [0, 2^universe_bits)
  int levels = 12;
  int repetitions = 12;
  int hash_independence = 14;

  // levels = repetitions = 3*ceil(log2(n_param)) per the polynomial failure
  // target, independence grows with log(n_param) as well.
  static L0Config for_size(int n_param, int universe_bits);
};

struct L0Query {
  bool failed = false;  // support non-empty but no level one-sparse
  bool empty = false;
  uint64_t element = 0;
  int64_t frequency = 0;
};

class L0Sketch {
 public:
  L0Sketch(const L0Config& cfg, uint64_t randomness_id);

  void update(uint64_t element, int64_t delta);
  void update(const SignedStream& stream);

  // Requires identical config and randomness id; throws otherwise.
  static L0Sketch merge(const L0Sketch& a, const L0Sketch& b);

  L0Query query() const;

  uint64_t randomness_id() const { return rid_; }
  const L0Config& config() const { return cfg_; }
  // Reported sketch size in bits.
  size_t bit_size() const;

  bool operator==(const L0Sketch& o) const;
  bool operator!=(const L0Sketch& o) const { return !(*this == o); }

  // Flat serialization (used to ship sketches through oracle protocols).
  std::vector<uint64_t> serialize() const;
  static L0Sketch deserialize(const L0Config& cfg, const std::vector<uint64_t>& words);

 private:
  struct Level {
    int64_t count = 0;
    unsigned __int128 wsum = 0;  // sum of delta * element, exact
    uint64_t fingerprint = 0;    // sum of delta * phi(element) mod p
    bool operator==(const Level& o) const {
      return count == o.count && wsum == o.wsum && fingerprint == o.fingerprint;
    }
  };

  int level_of(int rep, uint64_t element) const;
  uint64_t phi(uint64_t element) const;
  Level& at(int rep, int level) { return levels_[size_t(rep) * cfg_.levels + level]; }
  const Level& at(int rep, int level) const { return levels_[size_t(rep) * cfg_.levels + level]; }

  L0Config cfg_;
  uint64_t rid_;
  std::vector<Level> levels_;  // repetitions x levels, row-major
  std::vector<gf::JwiseHash> level_hash_;  // per repetition; empty when universe_bits > 32

  static constexpr uint64_t kFpPrime = (uint64_t(1) << 61) - 1;
};

}  // namespace congesim::sketch
