#include <algorithm>
#include <memory>
#include <stdexcept>

#include "congesim/net/engine.hpp"
#include "congesim/net/random_delay.hpp"
#include "congesim/net/view_test.hpp"
#include "doctest.h"

using namespace congesim;
using namespace congesim::net;

namespace {

// Every node floods the maximum input it has seen, 8-bit words.
struct MaxFlood : NodeProgram {
  NodeContext ctx;
  uint64_t best = 0;
  void init(const NodeContext& c) override {
    ctx = c;
    best = c.input;
  }
  void on_round(int, const SlotVec& in, SlotVec& out) override {
    for (const auto& s : in)
      if (s) best = std::max(best, s->value);
    for (auto& o : out) o = Word{best, 8};
  }
  std::vector<uint64_t> output() const override { return {best}; }
};

ProgramFactory max_flood() {
  return [](NodeId) { return std::make_unique<MaxFlood>(); };
}

// Remembers everything delivered, sends nothing.
struct Sink : NodeProgram {
  std::vector<uint64_t> seen;
  void init(const NodeContext&) override {}
  void on_round(int, const SlotVec& in, SlotVec&) override {
    for (const auto& s : in)
      if (s) seen.push_back(s->value);
  }
  std::vector<uint64_t> output() const override { return seen; }
};

struct WideSender : NodeProgram {
  void init(const NodeContext&) override {}
  void on_round(int, const SlotVec&, SlotVec& out) override {
    for (auto& o : out) o = Word{0x1ff, 9};
  }
  std::vector<uint64_t> output() const override { return {}; }
};

Adversary none() { return {}; }

}  // namespace

TEST_CASE("flooding converges in diameter rounds and runs are replayable") {
  Graph g = Graph::path(5);
  std::vector<uint64_t> inputs = {3, 99, 7, 12, 40};
  RunConfig cfg;
  cfg.rounds = 4;
  cfg.bandwidth = 8;
  cfg.seed = 5;
  cfg.record_messages = true;
  Execution a = run(g, max_flood(), inputs, none(), cfg);
  Execution b = run(g, max_flood(), inputs, none(), cfg);
  for (const auto& out : a.outputs) CHECK(out == std::vector<uint64_t>{99});
  CHECK(a.delivered_log == b.delivered_log);
  CHECK(a.to_json(true) == b.to_json(true));
  CHECK(a.round_stats[0].messages == 2 * g.edge_count());
  CHECK(a.max_edge_congestion == 4);
}

TEST_CASE("bandwidth violations name the offending node") {
  Graph g = Graph::path(2);
  RunConfig cfg;
  cfg.rounds = 1;
  cfg.bandwidth = 8;
  auto factory = [](NodeId) -> std::unique_ptr<NodeProgram> { return std::make_unique<WideSender>(); };
  CHECK_THROWS_WITH_AS(run(g, factory, {0, 0}, none(), cfg),
                       doctest::Contains("bandwidth violation"), std::runtime_error);
}

TEST_CASE("byzantine flip is delivered and accounted") {
  Graph g = Graph::path(3);
  std::vector<std::vector<EdgeAction>> script(1);
  EdgeAction act;
  act.edge = g.edge_id(0, 1);
  act.rewrite_uv = true;
  act.uv = Word{77, 8};
  script[0].push_back(act);

  Adversary adv;
  adv.kind = AdversaryKind::ByzMobile;
  adv.f = 1;
  adv.strategy = std::make_shared<ScriptedStrategy>(script);

  RunConfig cfg;
  cfg.rounds = 2;  // delivery lands in the sink's round-1 inbox
  cfg.bandwidth = 8;
  auto sink_or_send = [](NodeId id) -> std::unique_ptr<NodeProgram> {
    if (id == 0) return std::make_unique<MaxFlood>();
    return std::make_unique<Sink>();
  };
  Execution ex = run(g, sink_or_send, {9, 0, 0}, adv, cfg);
  REQUIRE(ex.corruptions.size() == 1);
  CHECK(ex.corruptions[0].round == 0);
  CHECK(ex.corruptions[0].sent == Slot{Word{9, 8}});
  CHECK(ex.corruptions[0].delivered == Slot{Word{77, 8}});
  CHECK(ex.outputs[1] == std::vector<uint64_t>{77});
  CHECK(ex.total_corrupted_messages == 1);
  CHECK(ex.round_stats[0].controlled_edges == 1);
}

TEST_CASE("mobile budget and selection rules are enforced") {
  Graph g = Graph::cycle(4);
  RunConfig cfg;
  cfg.rounds = 1;
  cfg.bandwidth = 8;

  auto with_script = [&](std::vector<EdgeAction> round0, AdversaryKind kind, int f) {
    Adversary adv;
    adv.kind = kind;
    adv.f = f;
    adv.strategy = std::make_shared<ScriptedStrategy>(std::vector<std::vector<EdgeAction>>{round0});
    return adv;
  };

  EdgeAction e0{0, false, false, {}, {}}, e1{1, false, false, {}, {}};
  SUBCASE("too many edges in one round") {
    auto adv = with_script({e0, e1}, AdversaryKind::EavesdropMobile, 1);
    CHECK_THROWS_WITH_AS(run(g, max_flood(), {1, 2, 3, 4}, adv, cfg),
                         doctest::Contains("budget violation"), std::runtime_error);
  }
  SUBCASE("duplicate edge selection") {
    auto adv = with_script({e0, e0}, AdversaryKind::EavesdropMobile, 2);
    CHECK_THROWS_WITH_AS(run(g, max_flood(), {1, 2, 3, 4}, adv, cfg),
                         doctest::Contains("twice"), std::runtime_error);
  }
  SUBCASE("eavesdropper cannot rewrite") {
    EdgeAction bad = e0;
    bad.rewrite_uv = true;
    bad.uv = Word{1, 1};
    auto adv = with_script({bad}, AdversaryKind::EavesdropMobile, 1);
    CHECK_THROWS_WITH_AS(run(g, max_flood(), {1, 2, 3, 4}, adv, cfg),
                         doctest::Contains("rewrite"), std::runtime_error);
  }
  SUBCASE("eavesdropper taps record both directions") {
    auto adv = with_script({e0}, AdversaryKind::EavesdropMobile, 1);
    Execution ex = run(g, max_flood(), {1, 2, 3, 4}, adv, cfg);
    REQUIRE(ex.taps.size() == 1);
    CHECK(ex.taps[0].edge == 0);
    CHECK(ex.taps[0].uv.has_value());
    CHECK(ex.taps[0].vu.has_value());
    CHECK(ex.total_corrupted_messages == 0);
  }
}

TEST_CASE("budgeted adversary counts altered messages, not selections") {
  Graph g = Graph::path(3);
  EdgeAction flip0;
  flip0.edge = g.edge_id(0, 1);
  flip0.rewrite_uv = true;
  flip0.uv = Word{1, 8};
  EdgeAction flip1;
  flip1.edge = g.edge_id(1, 2);
  flip1.rewrite_uv = true;
  flip1.uv = Word{1, 8};

  RunConfig cfg;
  cfg.rounds = 1;
  cfg.bandwidth = 8;

  Adversary adv;
  adv.kind = AdversaryKind::ByzBudgeted;
  adv.total_budget = 1;
  adv.strategy =
      std::make_shared<ScriptedStrategy>(std::vector<std::vector<EdgeAction>>{{flip0, flip1}});
  CHECK_THROWS_WITH_AS(run(g, max_flood(), {9, 9, 9}, adv, cfg),
                       doctest::Contains("total budget"), std::runtime_error);

  // Rewriting to the value already in flight costs nothing.
  EdgeAction same = flip0;
  same.uv = Word{9, 8};
  Adversary free_adv;
  free_adv.kind = AdversaryKind::ByzBudgeted;
  free_adv.total_budget = 0;
  free_adv.strategy =
      std::make_shared<ScriptedStrategy>(std::vector<std::vector<EdgeAction>>{{same}});
  Execution ex = run(g, max_flood(), {9, 9, 9}, free_adv, cfg);
  CHECK(ex.total_corrupted_messages == 0);
}

TEST_CASE("random-delay composition preserves each protocol's outputs") {
  Graph g = Graph::path(4);
  std::vector<DirEdgeId> all_dirs;
  for (int d = 0; d < g.dir_edge_count(); ++d) all_dirs.push_back(d);

  auto standalone = [&](std::vector<uint64_t> inputs) {
    RunConfig cfg;
    cfg.rounds = 3;
    cfg.bandwidth = 8;
    cfg.seed = 11;
    return run(g, max_flood(), inputs, none(), cfg).outputs;
  };

  SubProtocol p1{max_flood(), {5, 1, 2, 3}, 3, std::vector<std::vector<DirEdgeId>>(3, all_dirs)};
  SubProtocol p2{max_flood(), {1, 8, 1, 1}, 3, std::vector<std::vector<DirEdgeId>>(3, all_dirs)};
  auto res = run_random_delay(g, {p1, p2}, none(), 8, 123);

  CHECK(res.outputs[0] == standalone(p1.inputs));
  CHECK(res.outputs[1] == standalone(p2.inputs));
  CHECK(res.schedule.window_width >= 1);
  CHECK(res.schedule.total_rounds == res.schedule.windows * res.schedule.window_width);
  CHECK(res.execution.rounds == res.schedule.total_rounds);
}

TEST_CASE("undeclared sends are rejected by the scheduler") {
  Graph g = Graph::path(3);
  std::vector<std::vector<DirEdgeId>> usage(2);  // protocol claims silence
  SubProtocol p{max_flood(), {1, 2, 3}, 2, usage};
  CHECK_THROWS_WITH_AS(run_random_delay(g, {p}, none(), 8, 1),
                       doctest::Contains("undeclared"), std::runtime_error);
}

namespace {

// Sends input xor a fresh one-time pad on the single edge of a 2-node graph.
struct PadSender : NodeProgram {
  NodeContext ctx;
  bool clear = false;
  explicit PadSender(bool send_clear) : clear(send_clear) {}
  void init(const NodeContext& c) override { ctx = c; }
  void on_round(int round, const SlotVec&, SlotVec& out) override {
    if (ctx.id != 0 || round != 0) return;
    uint64_t key = clear ? 0 : ctx.draw(900, 2);
    out[0] = Word{ctx.input ^ key, 2};
  }
  std::vector<uint64_t> output() const override { return {}; }
};

}  // namespace

TEST_CASE("view distributions: padded traffic is input-independent, cleartext is not") {
  Graph g = Graph::path(2);
  EdgeAction tap;
  tap.edge = 0;
  Adversary adv;
  adv.kind = AdversaryKind::EavesdropMobile;
  adv.f = 1;
  adv.strategy = std::make_shared<ScriptedStrategy>(std::vector<std::vector<EdgeAction>>{{tap}});

  ViewTestCase tc;
  tc.graph = &g;
  tc.inputs_a = {1, 0};
  tc.inputs_b = {2, 0};
  tc.adversary = adv;
  tc.cfg.rounds = 1;
  tc.cfg.bandwidth = 2;
  tc.cfg.seed = 3;
  tc.components = {{0, 900, 2}};

  tc.factory = [](NodeId) { return std::make_unique<PadSender>(false); };
  auto hidden = view_distribution_test(tc, 1 << 16, 0);
  CHECK(hidden.exhaustive);
  CHECK(hidden.states == 4);
  CHECK(hidden.identical);
  CHECK(hidden.tv_distance == 0.0);

  tc.factory = [](NodeId) { return std::make_unique<PadSender>(true); };
  auto leaked = view_distribution_test(tc, 1 << 16, 0);
  CHECK(leaked.exhaustive);
  CHECK_FALSE(leaked.identical);
  CHECK(leaked.tv_distance == 1.0);
}

TEST_CASE("graph invariants and parsing") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  Graph g = Graph::parse_edge_list("# triangle\n0 1\n1 2\n0 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(g.connected());
  CHECK(Graph::parse_edge_list(g.to_edge_list()).edge_count() == 3);
  CHECK_THROWS_AS(Graph::parse_edge_list("0 1\n2\n"), std::invalid_argument);

  Graph k5 = Graph::clique(5);
  CHECK(k5.edge_count() == 10);
  CHECK(k5.degree(0) == 4);
  CHECK(k5.dir_edge_id(1, 0) == 2 * k5.edge_id(0, 1) + 1);
  CHECK(k5.dir_source(2 * k5.edge_id(0, 1)) == 0);

  Graph rr = Graph::random_regular(16, 4, 9);
  CHECK(rr.connected());
  for (int v = 0; v < 16; ++v) CHECK(rr.degree(v) == 4);
}
