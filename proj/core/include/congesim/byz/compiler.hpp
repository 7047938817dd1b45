#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "congesim/byz/mismatch.hpp"
#include "congesim/byz/oracle.hpp"
#include "congesim/net/engine.hpp"
#include "congesim/pack/tree_packing.hpp"
#include "congesim/sketch/l0_sketch.hpp"

// Round-by-round resilient simulation over a weak tree packing.
//
// Each round of the wrapped algorithm is simulated as: one raw exchange of
// the round's words (payload composed with sender/receiver ids), then z
// correction iterations. An iteration aggregates mismatch sketches up every
// subgraph under the protection oracle, selects the dominating observed
// mismatches at the root, broadcasts them with the error-corrected
// broadcast, and lets receivers adopt the entry keyed by their edge ids.
// With an f-mobile adversary the raw exchange leaves at most 2f mismatched
// directed words and each iteration halves the bound, so z = log2(2f) + 1
// iterations suffice; f = 0 degenerates to the raw exchange alone.
//
// The wrapped algorithm must send one word of at most payload_bits on every
// directed edge in every round (always-send); estimates are delivered back
// at payload_bits width. Requires k >= c_margin * c_expand * eta * f
// subgraphs.

namespace congesim::byz {

struct ByzCompileConfig {
  ByzConstants consts;
  int payload_bits = 8;
  int t_sketches = 8;
  // Sketch shape for the upcasts; universe_bits is overwritten with the
  // wire width.
  sketch::L0Config l0{16, 8, 8, 10};
  int z_override = -1;  // correction iterations; -1 derives from f
  bool record_traces = true;
};

struct ByzIterationTrace {
  int alg_round = 0;
  int iteration = 0;        // 0 is the raw exchange
  int true_mismatches = 0;  // engine-side count after the iteration
  int dm_size = 0;
  int failed_upcast_trees = 0;
  int failed_ecc_trees = 0;
  long long corrupted = 0;  // corruption applied during the iteration
};

struct ByzRunResult {
  std::vector<std::vector<uint64_t>> outputs;
  std::vector<ByzIterationTrace> traces;
  int alg_rounds = 0;
  int z = 0;
  int engine_rounds = 0;
  long long schedule_protocols = 0;
  long long schedule_failures = 0;
  int wire_bits = 0;

  // alg_round,iteration,true_mismatches,dm_size,failed_upcast,failed_ecc,corrupted
  std::string traces_csv() const;
};

ByzRunResult compile_byz_run(const net::Graph& g, const net::ProgramFactory& alg,
                             const std::vector<uint64_t>& inputs, int alg_rounds,
                             const pack::WeakTreePacking& packing, int f,
                             const ByzCompileConfig& cfg, const net::Adversary& adversary,
                             uint64_t seed);

}  // namespace congesim::byz
