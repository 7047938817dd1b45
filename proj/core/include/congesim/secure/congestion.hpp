#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "congesim/net/program.hpp"
#include "congesim/pack/tree_packing.hpp"
#include "congesim/secure/key_schedule.hpp"

// Congestion-sensitive secure compiler: hides not just message contents but
// which slots carry messages at all.
//
// Compiled schedule: (A) a key exchange covering one pad per directed edge
// per post-exchange round, (B) a designated source draws j hash-seed words
// and pipelines XOR shares of them down f + 1 trees of the supplied packing,
// (C) the wrapped protocol replayed with every real word mapped through a
// j-wise independent hash into a sparse subset of {0,1}^B' and padded, while
// every idle (edge, round) slot carries fresh uniform noise. From the end of
// the exchange onward every directed edge carries a B'-bit word every round,
// so taps reveal neither content nor traffic pattern.
//
// Receivers invert the hash through a preimage table over all valid
// (payload, sender, receiver) triples; a word whose unpad-then-lookup fails
// is dropped as noise. Trailing sender/receiver IDs in the hashed message
// reject cross-edge confusions. If the sampled hash collides on the valid
// set, every node deterministically bumps the seed words and retries, so the
// table stays consistent network-wide without extra communication.
//
// Deliberate simplifications at desk scale: B' is capped at 32 bits, inner
// words are delivered with width normalized to payload_bits, and noise slots
// still advance the pad index so endpoints never desynchronize.

namespace congesim::secure {

struct CongestionParams {
  int r = 1;             // wrapped protocol rounds
  int f = 0;             // mobile eavesdropper budget
  int cgst = 1;          // congestion bound of the wrapped protocol
  int payload_bits = 1;  // width every wrapped message is treated as
  int t = 0;             // extra exchange slack
  int B = 12;            // hashed-message bits incl. trailing IDs
  net::NodeId seed_src = 0;
};

struct CongestionCompiled {
  net::ProgramFactory factory;
  int rounds = 0;
  int exchange_rounds = 0;
  int broadcast_rounds = 0;  // phase B length
  int B = 0;
  int B_prime = 0;
  int j_indep = 0;
  int id_bits = 0;
  int seed_words = 0;
  // Words accepted as real by receivers, across all nodes of runs sharing
  // this factory; tests reset it and compare against the wrapped protocol's
  // delivery count to bound noise false-accepts.
  std::shared_ptr<std::atomic<long long>> accepted;
};

uint64_t seed_word_tag(int chunk);
uint64_t seed_share_tag(int chunk, int tree);
uint64_t noise_tag(net::DirEdgeId dir, int round);

// Throws std::invalid_argument when payload_bits + 2*id_bits exceeds B, when
// B is too large for the preimage table, when B' would exceed 32, or when
// the packing lacks f + 1 trees rooted at seed_src.
CongestionCompiled congestion_sensitive_compile(const net::ProgramFactory& inner,
                                                const CongestionParams& cp, const net::Graph& g,
                                                const pack::TreePacking& packing);

}  // namespace congesim::secure
