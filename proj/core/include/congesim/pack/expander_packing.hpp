#pragma once

#include <cstdint>
#include <vector>

#include "congesim/net/program.hpp"
#include "congesim/pack/tree_packing.hpp"

// Weak tree packing on expanders, built distributedly.
//
// Protocol (runs inside the engine, adversary supplied by the caller):
//   round 0: the higher-id endpoint of every edge samples a color in [k]
//            and announces it across the edge;
//   rounds 1..z: per-color parallel max-id BFS; every node repeats, on each
//            incident edge, the largest id it has heard for that edge's
//            color, and adopts the sender of a new maximum as its parent
//            candidate for that color;
//   round z+1: final update from round z's messages; nodes orient to their
//            parents and output the per-color parent map.
//
// Colors whose edges were corrupted or which simply failed to span are
// permitted by the weak-packing contract; assemble + revalidate count the
// good ones. Each directed edge commits to at most one color, so the load
// is at most 2.

namespace congesim::pack {

struct ExpanderPackingProtocol {
  net::ProgramFactory factory;
  int rounds = 0;     // z + 2
  int k = 0;          // colors: max(1, 20 * f * z)
  int z = 0;          // BFS rounds: ceil(3 * 4 * log2(n) / phi)
  int bandwidth = 0;  // bits per message needed by the protocol
  int depth_bound = 0;
};

ExpanderPackingProtocol expander_weak_packing(const net::Graph& g, int f, double phi,
                                              uint64_t seed);

// Same protocol with the color count and BFS depth pinned directly (the
// derived constants above outgrow desk-scale degrees quickly; tests exercise
// the mechanism at explicit small k, z).
ExpanderPackingProtocol weak_packing_protocol(const net::Graph& g, int k, int z);

// Decode per-node outputs of a run into a weak packing (good_count and load
// recomputed from scratch).
WeakTreePacking assemble_weak_packing(const net::Graph& g, const ExpanderPackingProtocol& proto,
                                      const std::vector<std::vector<uint64_t>>& outputs);

}  // namespace congesim::pack
