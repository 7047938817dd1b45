#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "congesim/net/graph.hpp"
#include "congesim/net/program.hpp"

// Mobile edge adversaries.
//
// Each round the adversary picks a set F_i of edges it controls this round
// (both directions). An eavesdropper reads the words crossing F_i; a
// byzantine adversary may rewrite, drop, or inject words on F_i.
//
// Budgets:
//   EavesdropMobile / ByzMobile: |F_i| <= f for every round.
//   ByzBudgeted: the cumulative number of altered directed messages over the
//   whole run is <= total_budget (selections are unbounded per round).
//
// Visibility: an eavesdropper chooses F_i from transcripts of rounds < i
// (same-round taps are recorded but become visible the next round) unless
// eaves_sees_current is set. A byzantine adversary is rushing: it sees the
// words sent in the current round before choosing.

namespace congesim::net {

enum class AdversaryKind { None, EavesdropMobile, ByzMobile, ByzBudgeted };

// One controlled edge in one round. For byzantine adversaries the two
// replacement slots say what to deliver in each direction; rewrite_uv/vu
// false means "leave that direction unchanged".
struct EdgeAction {
  EdgeId edge = -1;
  bool rewrite_uv = false;
  bool rewrite_vu = false;
  Slot uv;  // delivered u->v when rewrite_uv
  Slot vu;  // delivered v->u when rewrite_vu
};

struct TapRecord {
  int round = 0;
  EdgeId edge = -1;
  Slot uv, vu;  // words observed in each direction
};

struct StrategyView {
  const Graph* graph = nullptr;
  int round = 0;
  int total_rounds = 0;
  // Sent words this round by directed edge id; null for eavesdroppers unless
  // eaves_sees_current.
  const std::vector<Slot>* sent = nullptr;
  // All taps recorded in earlier rounds (eavesdropper only).
  const std::vector<TapRecord>* past_taps = nullptr;
  RngStream* rng = nullptr;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::vector<EdgeAction> choose(const StrategyView& view) = 0;
  // Optional substitute outputs for failed oracle protocols (targeted mode).
  virtual bool targeted_oracle_output(int /*protocol*/, NodeId /*node*/,
                                      std::vector<uint64_t>& /*out*/) {
    return false;
  }
};

struct Adversary {
  AdversaryKind kind = AdversaryKind::None;
  int f = 0;                  // per-round edge budget (mobile kinds)
  uint64_t total_budget = 0;  // altered directed messages (budgeted kind)
  bool eaves_sees_current = false;
  std::shared_ptr<Strategy> strategy;
};

// Replays a fixed script: script[i] is applied in round i, later rounds are
// left alone.
class ScriptedStrategy : public Strategy {
 public:
  explicit ScriptedStrategy(std::vector<std::vector<EdgeAction>> script)
      : script_(std::move(script)) {}
  std::vector<EdgeAction> choose(const StrategyView& view) override {
    if (view.round < int(script_.size())) return script_[view.round];
    return {};
  }

 private:
  std::vector<std::vector<EdgeAction>> script_;
};

// f distinct uniformly random edges per round. When byz is set, present
// words are replaced by uniform words of the same width; empty slots are
// filled with uniform words of inject_width bits (0 = never inject).
class RandomEdgesStrategy : public Strategy {
 public:
  RandomEdgesStrategy(int f, bool byz, int inject_width)
      : f_(f), byz_(byz), width_(inject_width) {}
  std::vector<EdgeAction> choose(const StrategyView& view) override;

 private:
  int f_;
  bool byz_;
  int width_;
};

}  // namespace congesim::net
