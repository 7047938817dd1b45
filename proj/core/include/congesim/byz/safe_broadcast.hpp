#pragma once

#include <cstdint>
#include <vector>

#include "congesim/byz/oracle.hpp"
#include "congesim/pack/tree_packing.hpp"

// Error-corrected broadcast over a weak tree packing. The root encodes a
// message of l symbols over GF(2^symbol_bits) into one share per subgraph
// with an evaluation-form MDS code, subgraph i carries share i to every
// node it reaches under the scheduled protection oracle, and each node
// decodes the nearest codeword from its k received shares (unreachable or
// failed trees contribute garbage or zero). Requires k >= c_expand * l and
// k >= c_floor * eta * f, under which fewer than k/c_margin failed trees
// leave the decode exact.

namespace congesim::byz {

struct SafeBroadcastResult {
  std::vector<std::vector<uint64_t>> decoded;  // l symbols per node
  std::vector<bool> tree_failed;               // protection verdict per subgraph
  int failed_trees = 0;
  int rounds = 0;
  long long corrupted = 0;
  bool all_correct = false;  // every node decoded the root message
};

SafeBroadcastResult ecc_safe_broadcast(const net::Graph& g,
                                       const std::vector<uint64_t>& root_msg,
                                       int symbol_bits,
                                       const pack::WeakTreePacking& packing, int f,
                                       const ByzConstants& cb,
                                       const net::Adversary& adversary, uint64_t seed);

}  // namespace congesim::byz
