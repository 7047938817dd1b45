#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "congesim/net/engine.hpp"

// Random-delay scheduling of independent sub-protocols.
//
// Each sub-protocol declares its directed edge usage per local round. Every
// protocol is assigned a start delay uniform in [0, delay_range]; time is
// divided into windows, window w hosting local round w - delay(p) of every
// due protocol p. Within a window, protocols sharing a directed edge are
// serialized into sub-slots (the window width W is the worst such clash,
// computed from the declared usage). Receivers identify the sub-protocol a
// word belongs to from the static (edge, window, sub-slot) assignment, so
// sub-protocols stay synchronous. Total rounds are windows * W, which for
// well-spread usage lands at O((congestion + dilation) polylog n).

namespace congesim::net {

struct SubProtocol {
  ProgramFactory factory;
  std::vector<uint64_t> inputs;
  int rounds = 0;
  // usage[r] = directed edges on which the protocol may send in local round r.
  std::vector<std::vector<DirEdgeId>> usage;
};

struct DelaySchedule {
  std::vector<int> delays;
  int windows = 0;
  int window_width = 0;  // W
  int total_rounds = 0;
  int declared_congestion = 0;  // max directed-edge total usage
  int max_dilation = 0;         // max declared rounds
};

DelaySchedule plan_random_delay(const Graph& graph, const std::vector<SubProtocol>& protos,
                                uint64_t seed, int delay_range);

struct RandomDelayResult {
  DelaySchedule schedule;
  Execution execution;
  std::vector<std::vector<std::vector<uint64_t>>> outputs;  // [proto][node]
};

// Runs the composite program under the given adversary. delay_range < 0
// picks the default (declared congestion).
RandomDelayResult run_random_delay(const Graph& graph, const std::vector<SubProtocol>& protos,
                                   const Adversary& adversary, int bandwidth, uint64_t seed,
                                   int delay_range = -1);

}  // namespace congesim::net
