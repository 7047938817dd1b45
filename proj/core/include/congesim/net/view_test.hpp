#pragma once

#include <cstdint>
#include <vector>

#include "congesim/net/engine.hpp"

// Indistinguishability testing for eavesdropper views.
//
// The adversary view of a run is the ordered sequence of taps (round, edge,
// both directions' words). For two input vectors, this module compares the
// distribution of that view over the declared randomness.
//
// Exhaustive mode enumerates the joint assignment of the declared randomness
// components (each a single draw some node makes), pins them through a
// rigged randomness provider, and compares the exact view histograms.
// Sampling mode estimates total variation distance over seeded trials.

namespace congesim::net {

struct RandomComponent {
  NodeId node = 0;
  uint64_t tag = 0;
  int bits = 0;
};

struct ViewTestCase {
  const Graph* graph = nullptr;
  ProgramFactory factory;
  std::vector<uint64_t> inputs_a, inputs_b;
  Adversary adversary;
  RunConfig cfg;
  // Randomness the view may depend on. Exhaustive mode enumerates exactly
  // these; remaining draws fall back to a fixed PRF shared by both inputs.
  std::vector<RandomComponent> components;
};

struct ViewTestResult {
  bool exhaustive = false;
  bool identical = false;      // exact histogram equality (exhaustive mode)
  double tv_distance = 0.0;    // exact (exhaustive) or estimated (sampling)
  uint64_t states = 0;         // enumerated assignments or trials per input
};

// Enumerates when prod(2^bits) <= exhaustive_limit, otherwise samples
// `sample_trials` seeded runs per input.
ViewTestResult view_distribution_test(const ViewTestCase& tc, uint64_t exhaustive_limit,
                                      int sample_trials);

// Serialized view of one execution (stable across runs).
std::vector<uint64_t> serialize_view(const Execution& ex);

}  // namespace congesim::net
