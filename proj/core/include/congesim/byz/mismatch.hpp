#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "congesim/byz/oracle.hpp"
#include "congesim/net/graph.hpp"
#include "congesim/pack/tree_packing.hpp"
#include "congesim/sketch/l0_sketch.hpp"

// Mismatch detection between sent words and receiver estimates.
//
// Every directed word carries its endpoint ids in the low bits, so a value
// names the edge it belongs to. Senders contribute their outgoing words
// with frequency +1 and receivers their current estimates with frequency
// -1; agreeing pairs cancel, so the support of the combined stream is
// exactly the mismatched pairs, and a recovered element with positive
// frequency is a sender's true word.

namespace congesim::byz {

// Number of id bits per endpoint for an n-node graph (at least 1).
int id_bits_for(int n);

// payload composed with sender and receiver ids; payload must fit in
// 64 - 2*id_bits bits.
uint64_t pack_wire(uint64_t payload, net::NodeId u, net::NodeId v, int id_bits);
uint64_t unpack_payload(uint64_t wire, int id_bits);
net::NodeId unpack_sender(uint64_t wire, int id_bits);
net::NodeId unpack_receiver(uint64_t wire, int id_bits);

// Current mismatch state for one simulated round: true sent words and
// per-receiver estimates, both indexed by directed edge id.
struct MismatchState {
  std::vector<uint64_t> sent;
  std::vector<uint64_t> est;
  int iteration = 0;
  std::map<uint64_t, int> supp;  // support counts from the last upcast
  std::vector<uint64_t> dm;      // last dominating list, support-descending

  // Directed edges whose estimate differs from the sent word.
  int true_mismatches() const;
};

// Signed stream held by each node: +1 for every outgoing word, -1 for every
// incoming estimate.
std::vector<sketch::SignedStream> mismatch_streams(const net::Graph& g,
                                                   const MismatchState& st);

struct UpcastResult {
  std::vector<sketch::L0Query> samples;   // t query results at the root
  std::vector<sketch::L0Sketch> merged;   // t combined sketches
};

// Aggregates t sketches of the given streams up the subgraph toward its
// root: every reachable node builds t sketches seeded by `randomness` and
// they are merged bottom-up; the root queries each. For a subgraph that is
// not a spanning tree only the reachable part contributes, which realizes
// the permitted arbitrary outcome. The merged sketches are bit-identical to
// sketches built directly on the union of the contributing streams.
UpcastResult l0_upcast(const net::Graph& g, const pack::RootedTree& tree,
                       const std::vector<sketch::SignedStream>& streams, int t,
                       uint64_t randomness, const sketch::L0Config& cfg);

// Support threshold for iteration j: 0.2 * c_expand * 2^j * eta * t for the
// per-round compiler, 0.4 * c_expand * 2^j * eta * t under a round-error
// budget.
double dm_threshold(const ByzConstants& cb, int j, int eta, int t, bool budgeted);

// Elements recovered with positive frequency and support >= delta, ordered
// by support descending then value; counting all samples bounds the list by
// k*t/delta entries. supp_out (optional) receives the full support table of
// positive elements.
std::vector<uint64_t> dominating_mismatches(
    const std::vector<std::vector<sketch::L0Query>>& samples_per_tree, double delta,
    std::map<uint64_t, int>* supp_out = nullptr);

}  // namespace congesim::byz
