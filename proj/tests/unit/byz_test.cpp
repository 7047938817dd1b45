#include <algorithm>
#include <memory>
#include <stdexcept>

#include "congesim/byz/compiler.hpp"
#include "congesim/byz/mismatch.hpp"
#include "congesim/byz/oracle.hpp"
#include "congesim/byz/safe_broadcast.hpp"
#include "congesim/byz/subgraph.hpp"
#include "congesim/net/engine.hpp"
#include "congesim/pack/star_packing.hpp"
#include "doctest.h"

using namespace congesim;
using namespace congesim::byz;

namespace {

// Constants scaled so a 16-node clique admits f >= 1.
ByzConstants desk() {
  ByzConstants cb;
  cb.theta = 2;
  cb.theta_time = 1;
  cb.c_expand = 2;
  cb.c_margin = 4;
  cb.c_floor = 4;
  return cb;
}

net::EdgeAction drop_both(net::EdgeId e) {
  net::EdgeAction a;
  a.edge = e;
  a.rewrite_uv = a.rewrite_vu = true;
  return a;
}

net::EdgeAction drop_one(net::EdgeId e) {
  net::EdgeAction a;
  a.edge = e;
  a.rewrite_uv = true;
  return a;
}

net::Adversary scripted_byz(int f, std::vector<std::vector<net::EdgeAction>> script) {
  net::Adversary a;
  a.kind = net::AdversaryKind::ByzMobile;
  a.f = f;
  a.strategy = std::make_shared<net::ScriptedStrategy>(std::move(script));
  return a;
}

struct MaxFlood : net::NodeProgram {
  int width;
  net::NodeContext ctx;
  uint64_t best = 0;
  explicit MaxFlood(int w) : width(w) {}
  void init(const net::NodeContext& c) override {
    ctx = c;
    best = c.input;
  }
  void on_round(int, const net::SlotVec& in, net::SlotVec& out) override {
    for (const auto& s : in)
      if (s) best = std::max(best, s->value);
    for (auto& o : out) o = net::Word{best, width};
  }
  std::vector<uint64_t> output() const override { return {best}; }
};

net::ProgramFactory max_flood(int width) {
  return [width](net::NodeId) { return std::make_unique<MaxFlood>(width); };
}

}  // namespace

TEST_CASE("schedule oracle: tally attribution and failure boundary") {
  auto g = net::Graph::clique(4);
  OracleProtocol p;
  p.edges = {net::EdgeId(0)};
  p.rounds = 4;
  p.output_bits = 8;
  p.clean_outputs.resize(4);
  for (net::NodeId v = 0; v < 4; ++v) p.clean_outputs[v] = {uint64_t(7 * v + 1)};

  SUBCASE("at the threshold the protocol survives") {
    // One dropped direction per round: tally 4, threshold 2*4/2 = 4.
    std::vector<std::vector<net::EdgeAction>> script(4, {drop_one(0)});
    auto res = run_schedule_rs(g, {p}, desk(), scripted_byz(1, script), 7);
    CHECK(res.total_rounds == 4);
    CHECK(res.eta == 1);
    CHECK(res.tally[0] == 4);
    CHECK_FALSE(res.failed[0]);
    CHECK(res.failed_count == 0);
    for (net::NodeId v = 0; v < 4; ++v)
      CHECK(res.outputs[0][v] == std::vector<uint64_t>{uint64_t(7 * v + 1)});
    CHECK(res.attributed == 4);
    CHECK(res.stray == 0);
    CHECK(res.attributed + res.stray == (long long)res.execution.total_corrupted_messages);
  }

  SUBCASE("one past the threshold it fails") {
    std::vector<std::vector<net::EdgeAction>> script(4, {drop_one(0)});
    script[0] = {drop_both(0)};
    auto res = run_schedule_rs(g, {p}, desk(), scripted_byz(1, script), 7);
    CHECK(res.tally[0] == 5);
    CHECK(res.failed[0]);
    CHECK(res.failed_count == 1);
    bool any_diff = false;
    for (net::NodeId v = 0; v < 4; ++v)
      if (res.outputs[0][v] != p.clean_outputs[v]) any_diff = true;
    CHECK(any_diff);
  }

  SUBCASE("corruption off the protocol's edges is stray") {
    // Unowned slots carry no word, so only injections count there.
    auto inject_one = [](net::EdgeId e) {
      net::EdgeAction a;
      a.edge = e;
      a.rewrite_uv = true;
      a.uv = net::Word{1, 1};
      return a;
    };
    auto inject_both = [](net::EdgeId e) {
      net::EdgeAction a;
      a.edge = e;
      a.rewrite_uv = a.rewrite_vu = true;
      a.uv = a.vu = net::Word{1, 1};
      return a;
    };
    std::vector<std::vector<net::EdgeAction>> script = {{inject_one(1)}, {inject_both(2)}};
    auto res = run_schedule_rs(g, {p}, desk(), scripted_byz(1, script), 7);
    CHECK(res.tally[0] == 0);
    CHECK(res.attributed == 0);
    CHECK(res.stray == 3);
    CHECK(res.attributed + res.stray == (long long)res.execution.total_corrupted_messages);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(run_schedule_rs(g, {}, desk(), net::Adversary{}, 0),
                    std::invalid_argument);
    OracleProtocol bad = p;
    bad.rounds = 0;
    CHECK_THROWS_AS(run_schedule_rs(g, {bad}, desk(), net::Adversary{}, 0),
                    std::invalid_argument);
    bad = p;
    bad.edges = {net::EdgeId(99)};
    CHECK_THROWS_AS(run_schedule_rs(g, {bad}, desk(), net::Adversary{}, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("schedule oracle: shared edges round-robin by subgraph order") {
  auto g = net::Graph::clique(4);
  OracleProtocol p0, p1;
  p0.edges = {net::EdgeId(0), net::EdgeId(1)};
  p1.edges = {net::EdgeId(0), net::EdgeId(2)};
  p0.rounds = p1.rounds = 2;
  p0.clean_outputs.assign(4, {1});
  p1.clean_outputs.assign(4, {2});
  // eta = 2: even rounds are p0's slot on edge 0, odd rounds are p1's.
  std::vector<std::vector<net::EdgeAction>> script = {{drop_one(0)}, {drop_one(0)}};
  auto res = run_schedule_rs(g, {p0, p1}, desk(), scripted_byz(1, script), 3);
  CHECK(res.eta == 2);
  CHECK(res.scheduled_rounds == 4);
  CHECK(res.tally[0] == 1);
  CHECK(res.tally[1] == 1);
  CHECK(res.failed_count == 0);
}

TEST_CASE("ecc safe broadcast: exact decode despite a killed tree") {
  auto g = net::Graph::clique(16);
  auto packing = pack::as_weak(pack::clique_star_packing(16));
  std::vector<uint64_t> msg = {3, 1, 4, 1, 5, 9, 2, 6};

  // Slot 0 of edges (0,1) and (0,2) belongs to the star centered at 0;
  // dropping both directions on both edges every even round pushes its
  // tally to 12 > 6.
  std::vector<std::vector<net::EdgeAction>> script(6);
  for (int r = 0; r < 6; r += 2)
    script[r] = {drop_both(g.edge_id(0, 1)), drop_both(g.edge_id(0, 2))};
  auto res = ecc_safe_broadcast(g, msg, 16, packing, 1, desk(), scripted_byz(2, script), 11);
  CHECK(res.failed_trees == 1);
  CHECK(res.tree_failed[0]);
  CHECK(res.all_correct);
  for (net::NodeId v = 0; v < 16; ++v) CHECK(res.decoded[v] == msg);

  SUBCASE("message too long for the expansion ratio") {
    std::vector<uint64_t> big(9, 1);  // k/c_expand = 8
    CHECK_THROWS_AS(
        ecc_safe_broadcast(g, big, 16, packing, 1, desk(), net::Adversary{}, 0),
        std::invalid_argument);
  }
}

TEST_CASE("wire packing round-trips and binds endpoint ids") {
  int idb = id_bits_for(16);
  CHECK(idb == 4);
  uint64_t w = pack_wire(0xAB, 3, 12, idb);
  CHECK(unpack_payload(w, idb) == 0xAB);
  CHECK(unpack_sender(w, idb) == 3);
  CHECK(unpack_receiver(w, idb) == 12);
  CHECK_THROWS_AS(pack_wire(uint64_t(1) << 60, 0, 1, 4), std::invalid_argument);
  CHECK(id_bits_for(2) == 1);
  CHECK(id_bits_for(17) == 5);
}

TEST_CASE("dominating mismatches: threshold, sign, and order") {
  auto positive = [](uint64_t e) {
    sketch::L0Query q;
    q.element = e;
    q.frequency = 1;
    return q;
  };
  auto negative = [](uint64_t e) {
    sketch::L0Query q;
    q.element = e;
    q.frequency = -1;
    return q;
  };
  sketch::L0Query fail_q;
  fail_q.failed = true;
  sketch::L0Query empty_q;
  empty_q.empty = true;

  std::vector<std::vector<sketch::L0Query>> samples = {
      {positive(20), positive(9), negative(5), empty_q},
      {positive(9), positive(20), fail_q},
      {positive(9), negative(5)},
      {positive(20), empty_q},
      {negative(5), positive(9)},
  };
  // supp: 9 -> 4, 20 -> 3, 5 only negative.
  std::map<uint64_t, int> supp;
  auto dm = dominating_mismatches(samples, 3.0, &supp);
  CHECK(dm == std::vector<uint64_t>{9, 20});
  CHECK(supp.at(9) == 4);
  CHECK(supp.at(20) == 3);
  CHECK(supp.count(5) == 0);
  CHECK(dominating_mismatches(samples, 3.5) == std::vector<uint64_t>{9});
  CHECK(dominating_mismatches(samples, 99.0).empty());

  // Equal support breaks ties toward the smaller value.
  std::vector<std::vector<sketch::L0Query>> tied = {{positive(7), positive(2)},
                                                    {positive(2), positive(7)}};
  CHECK(dominating_mismatches(tied, 2.0) == std::vector<uint64_t>{2, 7});
}

TEST_CASE("l0 upcast recovers the net stream at the root") {
  auto g = net::Graph::path(4);
  pack::RootedTree tree;
  tree.root = 0;
  tree.parent = {-1, 0, 1, 2};
  sketch::L0Config cfg{16, 8, 8, 10};

  std::vector<sketch::SignedStream> streams(4);
  streams[0].push_back({500, 1});
  streams[3].push_back({500, -1});  // cancels node 0's entry
  streams[1].push_back({77, 1});
  auto up = l0_upcast(g, tree, streams, 4, 42, cfg);
  REQUIRE(up.samples.size() == 4);
  for (const auto& q : up.samples) {
    REQUIRE_FALSE(q.failed);
    REQUIRE_FALSE(q.empty);
    CHECK(q.element == 77);
    CHECK(q.frequency == 1);
  }

  SUBCASE("unreachable nodes do not contribute") {
    pack::RootedTree broken = tree;
    broken.parent[3] = 3;  // self-loop severs node 3
    auto up2 = l0_upcast(g, broken, streams, 4, 42, cfg);
    // 500 no longer cancels; support is {500, 77}.
    for (const auto& q : up2.samples) {
      REQUIRE_FALSE(q.failed);
      REQUIRE_FALSE(q.empty);
      CHECK((q.element == 77 || q.element == 500));
      CHECK(q.frequency == 1);
    }
  }
}

TEST_CASE("resilient compiler: f = 0 matches the plain engine run") {
  auto g = net::Graph::path(8);
  std::vector<uint64_t> inputs;
  for (int i = 0; i < 8; ++i) inputs.push_back(uint64_t((i * 37 + 11) % 256));

  ByzCompileConfig cfg;
  cfg.payload_bits = 8;
  pack::WeakTreePacking empty_packing;
  auto res = compile_byz_run(g, max_flood(8), inputs, 3, empty_packing, 0, cfg,
                             net::Adversary{}, 99);
  CHECK(res.z == 0);
  CHECK(res.engine_rounds == 3);

  net::RunConfig rc;
  rc.rounds = 3;
  rc.bandwidth = 8;
  rc.seed = 99;
  auto ex = net::run(g, max_flood(8), inputs, net::Adversary{}, rc);
  CHECK(res.outputs == ex.outputs);
}

TEST_CASE("resilient compiler: mobile corruption is corrected each round") {
  auto g = net::Graph::clique(16);
  auto packing = pack::as_weak(pack::clique_star_packing(16));
  std::vector<uint64_t> inputs;
  for (int i = 0; i < 16; ++i) inputs.push_back(uint64_t((i * 53 + 7) % 251));

  ByzCompileConfig cfg;
  cfg.consts = desk();
  cfg.payload_bits = 8;
  cfg.t_sketches = 8;

  net::Adversary adv;
  adv.kind = net::AdversaryKind::ByzMobile;
  adv.f = 1;
  adv.strategy = std::make_shared<net::RandomEdgesStrategy>(1, true, 1);

  auto res = compile_byz_run(g, max_flood(8), inputs, 2, packing, 1, cfg, adv, 5);
  CHECK(res.z == 2);
  CHECK(res.wire_bits == 16);

  net::RunConfig rc;
  rc.rounds = 2;
  rc.bandwidth = 8;
  rc.seed = 5;
  auto ex = net::run(g, max_flood(8), inputs, net::Adversary{}, rc);
  CHECK(res.outputs == ex.outputs);

  // Every round ends with no surviving mismatch.
  for (const auto& t : res.traces)
    if (t.iteration == res.z) CHECK(t.true_mismatches == 0);
  CHECK(res.traces.size() == size_t(2 * (1 + res.z)));
  CHECK(res.traces_csv().find("alg_round") == 0);
}

TEST_CASE("resilient compiler: input validation") {
  auto g = net::Graph::clique(16);
  auto packing = pack::as_weak(pack::clique_star_packing(16));
  std::vector<uint64_t> inputs(16, 1);
  ByzCompileConfig cfg;
  cfg.consts = desk();

  // k = 16 < c_margin * c_expand * eta * f for f = 4.
  CHECK_THROWS_AS(compile_byz_run(g, max_flood(8), inputs, 1, packing, 4, cfg,
                                  net::Adversary{}, 0),
                  std::invalid_argument);

  auto silent = [](net::NodeId) {
    struct Silent : net::NodeProgram {
      void init(const net::NodeContext&) override {}
      void on_round(int, const net::SlotVec&, net::SlotVec&) override {}
      std::vector<uint64_t> output() const override { return {}; }
    };
    return std::unique_ptr<net::NodeProgram>(new Silent);
  };
  CHECK_THROWS_AS(
      compile_byz_run(g, silent, inputs, 1, packing, 1, cfg, net::Adversary{}, 0),
      std::invalid_argument);
}
