#pragma once

#include <cstdint>
#include <vector>

#include "congesim/net/random_delay.hpp"
#include "congesim/secure/key_schedule.hpp"

// Secure source-to-target message delivery over edge-disjoint paths.
//
// The source splits its input into f + 1 additive (XOR) shares and routes
// one share down each of f + 1 edge-disjoint paths, so any f edges miss at
// least one share. Every edge carries at most one payload word over the
// whole run. The mobile variant prepends one key round: the tail of every
// payload edge draws a fresh pad and ships it across, and every later hop is
// XORed with its edge's pad, so an adversary must tap an edge in the key
// round AND in its payload round to see anything. With f taps in the key
// round at least one path keeps all its pads secret.

namespace congesim::secure {

struct UnicastPlan {
  net::ProgramFactory factory;
  int rounds = 0;
  int bits = 0;
  net::NodeId src = 0;
  net::NodeId tgt = 0;
  int f = 0;
  bool mobile = false;
  std::vector<std::vector<net::NodeId>> paths;       // the f + 1 chosen paths
  std::vector<std::vector<net::DirEdgeId>> usage;    // per round, dirs that may carry a word
};

// Tags for the source's share draws; share i of f + 1 rides path i, the last
// share completes the XOR to the input.
uint64_t share_tag(int i);

// Static-adversary version: plain shares, no pads. The target outputs the
// reassembled message once all shares arrived; every other node outputs
// nothing. Throws std::invalid_argument when fewer than f + 1 edge-disjoint
// src-tgt paths exist.
UnicastPlan secure_unicast_static(const net::Graph& g, net::NodeId src, net::NodeId tgt, int bits,
                                  int f);

// Mobile-adversary version: one key round, payload schedule shifted by one,
// hop-by-hop decrypt/re-encrypt.
UnicastPlan mobile_secure_unicast(const net::Graph& g, net::NodeId src, net::NodeId tgt, int bits,
                                  int f);

struct MulticastInstance {
  net::NodeId src = 0;
  net::NodeId tgt = 0;
  uint64_t msg = 0;
};

struct MulticastResult {
  net::RandomDelayResult run;
  // Per instance: the target's output ([msg] when every share arrived).
  std::vector<std::vector<uint64_t>> target_outputs;
};

// Runs one mobile-secure unicast per instance, composed by random-delay
// scheduling. Each instance declares at most 2 uses of any directed edge
// (its key word and its payload word), so the composition's per-edge
// congestion stays at most 2 per instance pair sharing an edge.
MulticastResult mobile_secure_multicast(const net::Graph& g,
                                        const std::vector<MulticastInstance>& instances, int bits,
                                        int f, const net::Adversary& adversary, uint64_t seed);

}  // namespace congesim::secure
