#pragma once

#include <cstdint>
#include <vector>

#include "congesim/net/adversary.hpp"
#include "congesim/net/engine.hpp"
#include "congesim/net/graph.hpp"

// Contract-level message protection for scheduled subgraph protocols.
//
// A scheduled protocol occupies the edges of one subgraph with 1-bit
// always-send traffic for a fixed number of phases. The coding layer that a
// real protection compiler would add is not simulated; instead the engine
// runs the composite schedule under the live adversary, attributes every
// corrupted directed word to the protocol that owns that edge-round slot,
// and applies the protection guarantee as an accounting rule: a protocol
// whose tally stays at or below 2*rounds/theta (a 1/(theta*m) fraction of
// its 2*m*rounds total words over m edges) releases its fault-free outputs;
// one pushed past the threshold releases adversary-chosen outputs, either
// pseudorandom garbage or whatever the strategy's targeted_oracle_output
// hook substitutes. The wire content is pseudorandom filler; round counts
// and corruption accounting are exact, output content is not carried on the
// wire.
//
// Scheduling: phases of eta rounds (eta = max number of protocols sharing
// an edge). Within a phase, each edge serves its protocols round-robin in
// subgraph order, so protocol p always holds the same slot rank(p, e) on
// edge e. A protocol with r phases is active in phases 0..r-1. The run
// spans theta_time * max_rounds * eta engine rounds; the tail past the
// scheduled span is idle slack standing in for coding overhead.

namespace congesim::byz {

// All tunable constants of the resilient stack in one record. Defaults are
// the conservative reference values; desk-scale runs shrink them so that a
// 16-node clique admits a nonzero fault budget, and every test that does so
// records the values it ran with.
struct ByzConstants {
  // Failure divisor: a protocol fails once its corrupted directed words
  // exceed 2*rounds/theta.
  int theta = 2;
  // Schedule dilation factor (slack rounds, see above).
  int theta_time = 1;
  // Safe broadcast encodes l symbols into k >= c_expand * l shares.
  int c_expand = 4;
  // Safe broadcast decodes exactly while fewer than k/c_margin trees fail.
  int c_margin = 40;
  // Safe broadcast requires k >= c_floor * eta * f trees.
  int c_floor = 40;
};

// One schedule slot: an always-send wire footprint plus the outputs to
// release if the slot survives. clean_outputs[v] is what node v obtains
// from the fault-free protocol; garbage for failed protocols is fabricated
// with the same shape, masked to output_bits.
struct OracleProtocol {
  std::vector<net::EdgeId> edges;
  int rounds = 0;
  std::vector<std::vector<uint64_t>> clean_outputs;
  int output_bits = 64;
};

struct ScheduleResult {
  int total_rounds = 0;      // theta_time * max_rounds * eta
  int scheduled_rounds = 0;  // max_rounds * eta
  int eta = 0;
  // Corrupted directed words charged to each protocol. attributed is their
  // sum; stray counts corruptions on slots no active protocol owns, so
  // attributed + stray equals the execution's total corruption count.
  std::vector<long long> tally;
  long long attributed = 0;
  long long stray = 0;
  std::vector<bool> failed;
  int failed_count = 0;
  std::vector<std::vector<std::vector<uint64_t>>> outputs;  // [protocol][node]
  net::Execution execution;
};

// Runs all protocols in parallel under the adversary and the accounting
// rule above. Throws if a protocol has no edges, a bad edge id, or a
// non-positive round count.
ScheduleResult run_schedule_rs(const net::Graph& g,
                               const std::vector<OracleProtocol>& protocols,
                               const ByzConstants& cb, const net::Adversary& adversary,
                               uint64_t seed);

}  // namespace congesim::byz
