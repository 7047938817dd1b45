#pragma once

#include <memory>
#include <span>
#include <vector>

#include "congesim/net/adversary.hpp"
#include "congesim/net/execution.hpp"
#include "congesim/net/graph.hpp"
#include "congesim/net/program.hpp"

// Synchronous B-bit CONGEST engine.
//
// One run: for each round, every node program emits at most one word per
// incident edge; the adversary selects and (if byzantine) alters edges under
// its budget; words are delivered at the round boundary. The run is a pure
// function of (graph, programs, adversary strategy, seed): all randomness is
// counter-based off the seed.

namespace congesim::net {

struct RunConfig {
  int rounds = 0;
  int bandwidth = 64;
  uint64_t seed = 0;
  bool record_messages = false;
  bool eaves_sees_current = false;
  // Fail on words wider than the bandwidth (set by every scenario; tests
  // may disable to probe the check itself).
  bool validate_widths = true;
  RandomnessProvider* randomness_override = nullptr;  // tests only
};

// Observer for shared services (the oracle hub). Called after delivery with
// the list of directed-edge corruptions applied that round.
class RoundObserver {
 public:
  virtual ~RoundObserver() = default;
  virtual void after_round(int round, const std::vector<DirEdgeId>& corrupted) = 0;
};

// Programs are initialized by the engine (context carries input, bandwidth,
// randomness) and remain inspectable after the run.
Execution run(const Graph& graph, std::vector<std::unique_ptr<NodeProgram>>& programs,
              const std::vector<uint64_t>& inputs, const Adversary& adversary,
              const RunConfig& cfg, std::span<RoundObserver* const> observers = {});

// Convenience: build programs from a factory and run.
Execution run(const Graph& graph, const ProgramFactory& factory,
              const std::vector<uint64_t>& inputs, const Adversary& adversary,
              const RunConfig& cfg, std::span<RoundObserver* const> observers = {});

}  // namespace congesim::net
