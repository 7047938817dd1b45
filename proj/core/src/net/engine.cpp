#include "congesim/net/engine.hpp"

#include <stdexcept>
#include <string>

namespace congesim::net {

namespace {

void check_budget(const Adversary& adv, int round, size_t selected, uint64_t altered_total) {
  switch (adv.kind) {
    case AdversaryKind::None:
      if (selected > 0)
        throw std::runtime_error("adversary kind None selected edges in round " +
                                 std::to_string(round));
      break;
    case AdversaryKind::EavesdropMobile:
    case AdversaryKind::ByzMobile:
      if (int(selected) > adv.f)
        throw std::runtime_error("adversary budget violation in round " + std::to_string(round) +
                                 ": selected " + std::to_string(selected) + " edges, budget " +
                                 std::to_string(adv.f));
      break;
    case AdversaryKind::ByzBudgeted:
      if (altered_total > adv.total_budget)
        throw std::runtime_error("budgeted adversary exceeded total budget at round " +
                                 std::to_string(round) + ": " + std::to_string(altered_total) +
                                 " > " + std::to_string(adv.total_budget));
      break;
  }
}

}  // namespace

Execution run(const Graph& graph, std::vector<std::unique_ptr<NodeProgram>>& programs,
              const std::vector<uint64_t>& inputs, const Adversary& adversary,
              const RunConfig& cfg, std::span<RoundObserver* const> observers) {
  const int n = graph.node_count();
  if (int(programs.size()) != n) throw std::invalid_argument("engine: one program per node required");
  if (int(inputs.size()) != n) throw std::invalid_argument("engine: one input per node required");
  if (adversary.kind != AdversaryKind::None && !adversary.strategy)
    throw std::invalid_argument("engine: adversary kind set but no strategy given");

  PrfRandomness default_randomness(cfg.seed);
  RandomnessProvider* randomness =
      cfg.randomness_override ? cfg.randomness_override : &default_randomness;

  std::vector<NodeContext> ctx(n);
  for (NodeId v = 0; v < n; ++v) {
    ctx[v] = NodeContext{v, &graph, inputs[v], cfg.bandwidth, randomness};
    programs[v]->init(ctx[v]);
  }

  Execution ex;
  ex.rounds = cfg.rounds;
  ex.bandwidth = cfg.bandwidth;
  ex.seed = cfg.seed;
  ex.dir_edge_load.assign(graph.dir_edge_count(), 0);
  ex.round_stats.resize(cfg.rounds);
  ex.controlled.resize(cfg.rounds);

  RngStream strategy_rng(cfg.seed, 0x61647673);

  // Delivered words from the previous round, per node aligned to neighbors.
  std::vector<SlotVec> inbox(n), outbox(n);
  for (NodeId v = 0; v < n; ++v) {
    inbox[v].assign(graph.neighbors(v).size(), std::nullopt);
    outbox[v].assign(graph.neighbors(v).size(), std::nullopt);
  }

  std::vector<Slot> sent(graph.dir_edge_count());
  std::vector<Slot> delivered(graph.dir_edge_count());
  uint64_t altered_total = 0;

  for (int round = 0; round < cfg.rounds; ++round) {
    // 1. Programs emit.
    for (NodeId v = 0; v < n; ++v) {
      auto& out = outbox[v];
      std::fill(out.begin(), out.end(), std::nullopt);
      programs[v]->on_round(round, inbox[v], out);
    }
    std::fill(sent.begin(), sent.end(), std::nullopt);
    for (NodeId v = 0; v < n; ++v) {
      const auto& nbrs = graph.neighbors(v);
      for (size_t i = 0; i < nbrs.size(); ++i) {
        const Slot& s = outbox[v][i];
        if (!s) continue;
        if (cfg.validate_widths && (s->width < 0 || s->width > cfg.bandwidth ||
                                     (s->width < 64 && (s->value >> s->width) != 0)))
          throw std::runtime_error("bandwidth violation: node " + std::to_string(v) +
                                   " round " + std::to_string(round) + " sent " +
                                   std::to_string(s->width) + " bits (limit " +
                                   std::to_string(cfg.bandwidth) + ")");
        sent[graph.dir_edge_id(v, nbrs[i])] = s;
      }
    }

    // 2. Adversary selects and alters.
    std::vector<EdgeAction> actions;
    if (adversary.kind != AdversaryKind::None) {
      StrategyView view;
      view.graph = &graph;
      view.round = round;
      view.total_rounds = cfg.rounds;
      view.rng = &strategy_rng;
      bool sees_current = adversary.kind == AdversaryKind::ByzMobile ||
                          adversary.kind == AdversaryKind::ByzBudgeted ||
                          (adversary.kind == AdversaryKind::EavesdropMobile &&
                           (cfg.eaves_sees_current || adversary.eaves_sees_current));
      view.sent = sees_current ? &sent : nullptr;
      view.past_taps = &ex.taps;
      actions = adversary.strategy->choose(view);
    }

    delivered = sent;
    int altered_this_round = 0;
    std::vector<DirEdgeId> corrupted_now;
    std::vector<EdgeId> selected_edges;
    for (const EdgeAction& act : actions) {
      if (act.edge < 0 || act.edge >= graph.edge_count())
        throw std::runtime_error("adversary selected invalid edge in round " +
                                 std::to_string(round));
      for (EdgeId prev : selected_edges)
        if (prev == act.edge)
          throw std::runtime_error("adversary selected edge twice in round " +
                                   std::to_string(round));
      selected_edges.push_back(act.edge);
      if (adversary.kind == AdversaryKind::EavesdropMobile) {
        if (act.rewrite_uv || act.rewrite_vu)
          throw std::runtime_error("eavesdropper strategy attempted to rewrite a message");
        ex.taps.push_back({round, act.edge, sent[2 * act.edge], sent[2 * act.edge + 1]});
        continue;
      }
      auto apply = [&](int side, bool rewrite, const Slot& repl) {
        if (!rewrite) return;
        DirEdgeId d = 2 * act.edge + side;
        if (cfg.validate_widths && repl &&
            (repl->width < 0 || repl->width > cfg.bandwidth ||
             (repl->width < 64 && (repl->value >> repl->width) != 0)))
          throw std::runtime_error("adversary bandwidth violation in round " +
                                   std::to_string(round));
        if (delivered[d] == repl) return;  // no actual alteration, no charge
        delivered[d] = repl;
        ++altered_this_round;
        corrupted_now.push_back(d);
        ex.corruptions.push_back({round, d, sent[d], delivered[d]});
      };
      apply(0, act.rewrite_uv, act.uv);
      apply(1, act.rewrite_vu, act.vu);
    }
    altered_total += altered_this_round;
    check_budget(adversary, round, selected_edges.size(), altered_total);
    ex.controlled[round] = selected_edges;

    // 3. Deliver and account.
    int msgs = 0;
    for (DirEdgeId d = 0; d < graph.dir_edge_count(); ++d) {
      if (sent[d]) {
        ++msgs;
        ++ex.dir_edge_load[d];
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      const auto& nbrs = graph.neighbors(v);
      inbox[v].assign(nbrs.size(), std::nullopt);
      for (size_t i = 0; i < nbrs.size(); ++i)
        inbox[v][i] = delivered[graph.dir_edge_id(nbrs[i], v)];
    }

    ex.round_stats[round] = {msgs, int(selected_edges.size()), altered_this_round};
    ex.total_corrupted_messages += altered_this_round;
    if (cfg.record_messages) {
      ex.sent_log.push_back(sent);
      ex.delivered_log.push_back(delivered);
    }
    for (RoundObserver* obs : observers) obs->after_round(round, corrupted_now);
  }

  for (int load : ex.dir_edge_load) ex.max_edge_congestion = std::max(ex.max_edge_congestion, load);
  ex.outputs.resize(n);
  for (NodeId v = 0; v < n; ++v) ex.outputs[v] = programs[v]->output();
  return ex;
}

Execution run(const Graph& graph, const ProgramFactory& factory,
              const std::vector<uint64_t>& inputs, const Adversary& adversary,
              const RunConfig& cfg, std::span<RoundObserver* const> observers) {
  std::vector<std::unique_ptr<NodeProgram>> programs;
  programs.reserve(graph.node_count());
  for (NodeId v = 0; v < graph.node_count(); ++v) programs.push_back(factory(v));
  return run(graph, programs, inputs, adversary, cfg, observers);
}

}  // namespace congesim::net
