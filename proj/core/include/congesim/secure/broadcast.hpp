#pragma once

#include <cstdint>
#include <vector>

#include "congesim/net/program.hpp"
#include "congesim/pack/tree_packing.hpp"
#include "congesim/secure/key_schedule.hpp"

// Secure broadcast over a tree packing.
//
// The source XOR-splits its input into k shares and pipelines share i down
// tree i of the packing; every node recombines the k shares it received.
// Against a mobile adversary the whole schedule is wrapped in a key
// exchange: every directed tree edge gets one fresh pad per scheduled use
// and every share crossing it is XORed with the pad. With k >= f + 1
// edge-disjoint trees, f taps per round never cover a pad and its ciphertext
// for every tree.
//
// Trees may share edges (load > 1); the scheduler staggers tree start
// offsets so no directed edge carries two words in the same round, and the
// exchange supplies one pad per use.

namespace congesim::secure {

struct BroadcastPlan {
  net::ProgramFactory factory;
  int rounds = 0;
  int exchange_rounds = 0;
  int k = 0;
  int bits = 0;
  std::vector<int> tree_start;  // payload-phase start offset per tree
  int max_edge_keys = 0;        // max pads exchanged on one directed edge
  std::vector<std::vector<net::DirEdgeId>> usage;  // payload-phase rounds only
};

uint64_t broadcast_share_tag(int tree);

// Throws std::invalid_argument when the packing has at most f trees, the
// packing root differs from src, or a tree fails validation.
BroadcastPlan mobile_broadcast(const net::Graph& g, net::NodeId src, int bits,
                               const pack::TreePacking& packing, int f, int t = 0);

}  // namespace congesim::secure
