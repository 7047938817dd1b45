#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "congesim/net/graph.hpp"
#include "congesim/rng.hpp"

// Node programs for the synchronous B-bit CONGEST engine.
//
// In each round every node hands the engine at most one word per incident
// edge; the engine delivers (possibly adversarially altered) words at the
// round boundary. An absent word is a genuinely empty slot, distinct from
// any message value including zero.

namespace congesim::net {

struct Word {
  uint64_t value = 0;
  int width = 0;  // bits actually used; must be <= engine bandwidth

  bool operator==(const Word& o) const { return value == o.value && width == o.width; }
};
using Slot = std::optional<Word>;

// Pluggable randomness: programs must draw all randomness through this, so
// tests can pin individual draws. Tags identify the purpose of a draw and
// must be stable across runs.
class RandomnessProvider {
 public:
  virtual ~RandomnessProvider() = default;
  virtual uint64_t draw(NodeId node, uint64_t tag, int bits) = 0;
};

class PrfRandomness : public RandomnessProvider {
 public:
  explicit PrfRandomness(uint64_t seed) : prf_{seed} {}
  uint64_t draw(NodeId node, uint64_t tag, int bits) override {
    uint64_t w = prf_.at(0x6e6f6465, uint64_t(node), tag);
    return bits >= 64 ? w : (w & ((uint64_t(1) << bits) - 1));
  }

 private:
  Prf prf_;
};

// PrfRandomness with pinned overrides for exhaustive enumeration.
class RiggedRandomness : public RandomnessProvider {
 public:
  explicit RiggedRandomness(uint64_t seed) : base_(seed) {}
  void pin(NodeId node, uint64_t tag, uint64_t value) { pins_[key(node, tag)] = value; }
  void clear() { pins_.clear(); }
  uint64_t draw(NodeId node, uint64_t tag, int bits) override {
    auto it = pins_.find(key(node, tag));
    if (it != pins_.end())
      return bits >= 64 ? it->second : (it->second & ((uint64_t(1) << bits) - 1));
    return base_.draw(node, tag, bits);
  }

 private:
  static uint64_t key(NodeId node, uint64_t tag) { return mix64(mix64(uint64_t(node)) ^ tag); }
  PrfRandomness base_;
  std::unordered_map<uint64_t, uint64_t> pins_;
};

struct NodeContext {
  NodeId id = 0;
  const Graph* graph = nullptr;
  uint64_t input = 0;
  int bandwidth = 64;
  RandomnessProvider* random = nullptr;

  const std::vector<NodeId>& neighbors() const { return graph->neighbors(id); }
  uint64_t draw(uint64_t tag, int bits) const { return random->draw(id, tag, bits); }
};

// Received / outgoing words aligned with ctx.neighbors() order.
using SlotVec = std::vector<Slot>;

class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(const NodeContext& ctx) = 0;
  // round counts from 0. `in` holds the words delivered at the end of the
  // previous round (empty slots in round 0).
  virtual void on_round(int round, const SlotVec& in, SlotVec& out) = 0;
  virtual std::vector<uint64_t> output() const = 0;
};

using ProgramFactory = std::function<std::unique_ptr<NodeProgram>(NodeId)>;

}  // namespace congesim::net
