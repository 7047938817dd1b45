#include <cmath>
#include <set>
#include <stdexcept>

#include "congesim/net/engine.hpp"
#include "congesim/pack/conductance.hpp"
#include "congesim/pack/connectivity.hpp"
#include "congesim/pack/cycle_cover.hpp"
#include "congesim/pack/expander_packing.hpp"
#include "congesim/pack/greedy_packing.hpp"
#include "congesim/pack/star_packing.hpp"
#include "congesim/pack/tree_packing.hpp"
#include "doctest.h"

using namespace congesim;
using namespace congesim::pack;
using net::Graph;

namespace {

// Brute-force minimum cost over all depth-<=d spanning trees, by enumerating
// parent assignments (each non-root node picks a neighbor).
double brute_force_opt(const Graph& g, const std::vector<double>& w, int d) {
  int n = g.node_count();
  double best = -1;
  for (net::NodeId root = 0; root < n; ++root) {
    std::vector<net::NodeId> parent(n, -1), choice(n, 0);
    // odometer over neighbor choices of all non-root nodes
    std::vector<net::NodeId> nodes;
    for (net::NodeId v = 0; v < n; ++v)
      if (v != root) nodes.push_back(v);
    std::vector<int> idx(nodes.size(), 0);
    while (true) {
      for (size_t i = 0; i < nodes.size(); ++i)
        parent[nodes[i]] = g.neighbors(nodes[i])[idx[i]];
      parent[root] = -1;
      RootedTree t{root, parent};
      if (is_spanning_tree(g, t) && tree_depth(t) <= d) {
        double c = 0;
        for (net::NodeId v = 0; v < n; ++v)
          if (v != root) c += w[g.edge_id(v, parent[v])];
        if (best < 0 || c < best) best = c;
      }
      size_t p = 0;
      while (p < idx.size() && ++idx[p] == g.degree(nodes[p])) idx[p++] = 0;
      if (p == idx.size()) break;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("connectivity: known values") {
  CHECK(edge_connectivity(Graph::cycle(5)) == 2);
  CHECK(edge_connectivity(Graph::clique(5)) == 4);
  CHECK(edge_connectivity(Graph::path(4)) == 1);
  CHECK(local_edge_connectivity(Graph::clique(6), 1, 4) == 5);
  CHECK(is_k_edge_connected(Graph::clique(6), 5));
  CHECK_FALSE(is_k_edge_connected(Graph::clique(5), 5));
}

TEST_CASE("edge-disjoint path witnesses are valid and maximal") {
  for (const Graph& g : {Graph::clique(6), Graph::cycle(6), Graph::random_regular(10, 4, 2)}) {
    for (net::NodeId v = 1; v < g.node_count(); v += 2) {
      auto paths = edge_disjoint_paths(g, 0, v);
      CHECK(int(paths.size()) == local_edge_connectivity(g, 0, v));
      std::set<int> used;
      for (const auto& p : paths) {
        REQUIRE(p.front() == 0);
        REQUIRE(p.back() == v);
        for (size_t i = 0; i + 1 < p.size(); ++i) {
          int e = g.edge_id(p[i], p[i + 1]);
          REQUIRE(e >= 0);
          CHECK(used.insert(e).second);  // pairwise disjoint
        }
      }
    }
  }
}

TEST_CASE("length-bounded connectivity: known values") {
  CHECK(kd_connectivity_check(Graph::cycle(6), 2, 5));
  CHECK_FALSE(kd_connectivity_check(Graph::cycle(6), 2, 4));
  CHECK_FALSE(kd_connectivity_check(Graph::cycle(6), 3, 5));
  CHECK(kd_connectivity_check(Graph::clique(7), 6, 2));
  CHECK_FALSE(kd_connectivity_check(Graph::clique(7), 7, 2));
}

TEST_CASE("star packing validates as an (n, 2, 2) packing") {
  for (int n : {2, 5, 8}) {
    Graph g = Graph::clique(n);
    TreePacking p = clique_star_packing(n);
    CHECK(int(p.trees.size()) == n);
    CHECK(p.load == 2);
    auto check = validate(g, p);
    CHECK(check.ok);
    CHECK(check.why.empty());
  }
  // edge (i,j) appears exactly in the stars centered at i and j
  Graph g = Graph::clique(8);
  TreePacking p = clique_star_packing(8);
  for (const auto& e : g.edges()) {
    int count = 0;
    std::set<int> owners;
    for (size_t i = 0; i < p.trees.size(); ++i) {
      const auto& t = p.trees[i];
      for (net::NodeId v = 0; v < 8; ++v)
        if (v != t.root && (v == e.u || v == e.v) && t.parent[v] >= 0 &&
            g.edge_id(v, t.parent[v]) == g.edge_id(e.u, e.v)) {
          ++count;
          owners.insert(int(i));
        }
    }
    CHECK(count == 2);
    CHECK(owners == std::set<int>{e.u, e.v});
  }
}

TEST_CASE("packing validator rejects broken packings") {
  Graph g = Graph::clique(4);
  TreePacking p = clique_star_packing(4);
  auto bad = p;
  bad.trees[1].parent[2] = 2;  // self loop
  CHECK_FALSE(validate(g, bad).ok);
  bad = p;
  bad.depth_bound = 1;
  CHECK_FALSE(validate(g, bad).ok);
  bad = p;
  bad.load = 1;
  CHECK_FALSE(validate(g, bad).ok);
  bad = p;
  bad.trees[2].root = 1;
  CHECK_FALSE(validate(g, bad).ok);
}

TEST_CASE("packing JSON round-trips") {
  Graph g = Graph::clique(5);
  TreePacking p = clique_star_packing(5);
  TreePacking q = tree_packing_from_json(to_json(p));
  CHECK(validate(g, q).ok);
  CHECK(q.trees.size() == p.trees.size());
  for (size_t i = 0; i < q.trees.size(); ++i) CHECK(q.trees[i].parent == p.trees[i].parent);
}

TEST_CASE("min-cost depth tree matches brute force on random 6-node graphs") {
  RngStream rng(0x7ee5, 0);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<net::NodeId, net::NodeId>> edges;
    for (int u = 0; u < 6; ++u)
      for (int v = u + 1; v < 6; ++v)
        if (rng.unit() < 0.6) edges.push_back({u, v});
    Graph g;
    try {
      g = Graph(6, edges);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (!g.connected()) continue;
    std::vector<double> w(g.edge_count());
    for (auto& x : w) x = 1.0 + double(rng.below(100));
    for (int d : {2, 3, 5}) {
      double opt = brute_force_opt(g, w, d);
      if (opt < 0) {
        CHECK_THROWS_AS(min_cost_depth_tree(g, w, d), std::invalid_argument);
        continue;
      }
      auto got = min_cost_depth_tree(g, w, d);
      CHECK(got.exact);
      CHECK(got.alpha == 1.0);
      CHECK(got.cost == doctest::Approx(opt));
      CHECK(is_spanning_tree(g, got.tree));
      CHECK(tree_depth(got.tree) <= d);
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("min-cost depth tree fixed cases") {
  // a star with uniform weights and d=1: the star itself, cost n-1
  Graph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto t = min_cost_depth_tree(star, std::vector<double>(4, 1.0), 1);
  CHECK(t.cost == doctest::Approx(4.0));
  CHECK(t.tree.root == 0);
  CHECK(tree_depth(t.tree) == 1);
  // unconstrained depth on a path: the path itself
  Graph path = Graph::path(5);
  auto pt = min_cost_depth_tree(path, std::vector<double>(4, 2.0), 4);
  CHECK(pt.cost == doctest::Approx(8.0));
}

TEST_CASE("layered heuristic stays within the calibrated ratio") {
  // calibrate heuristic/optimum on 7-node graphs where the exact search is
  // cheap; kLayeredHeuristicAlpha is the frozen worst case plus margin
  RngStream rng(0xca1b, 0);
  double worst = 1.0;
  int compared = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<net::NodeId, net::NodeId>> edges;
    for (int u = 0; u < 7; ++u)
      for (int v = u + 1; v < 7; ++v)
        if (rng.unit() < 0.55) edges.push_back({u, v});
    Graph g(7, edges);
    if (!g.connected()) continue;
    std::vector<double> w(g.edge_count());
    for (auto& x : w) x = 1.0 + double(rng.below(20));
    for (int d : {2, 3, 4}) {
      double opt;
      try {
        opt = min_cost_depth_tree(g, w, d).cost;
      } catch (const std::invalid_argument&) {
        // BFS radius check is exact, so the heuristic must refuse too
        CHECK_THROWS_AS(layered_depth_tree(g, w, d), std::invalid_argument);
        continue;
      }
      auto h = layered_depth_tree(g, w, d);
      CHECK(is_spanning_tree(g, h.tree));
      CHECK(tree_depth(h.tree) <= d);
      CHECK(h.cost >= opt - 1e-9);
      worst = std::max(worst, h.cost / opt);
      ++compared;
    }
  }
  CHECK(compared > 60);
  CHECK(worst <= kLayeredHeuristicAlpha);

  // >9 nodes routes to the heuristic automatically
  Graph big = Graph::random_regular(12, 4, 5);
  std::vector<double> w(big.edge_count());
  RngStream wr(0xbeef, 0);
  for (auto& x : w) x = 1.0 + double(wr.below(10));
  auto h = min_cost_depth_tree(big, w, 4);
  CHECK_FALSE(h.exact);
  CHECK(h.alpha == kLayeredHeuristicAlpha);
  CHECK(is_spanning_tree(big, h.tree));
  CHECK(tree_depth(h.tree) <= 4);
}

TEST_CASE("greedy packing: cycle and clique examples") {
  auto res = greedy_pack(Graph::cycle(4), 1, 4);
  CHECK(res.built == 1);
  CHECK(res.packing.load == 1);
  CHECK(validate(Graph::cycle(4), res.packing).ok);

  Graph k6 = Graph::clique(6);
  auto r6 = greedy_pack(k6, 3, 3);
  CHECK(r6.built == 3);
  CHECK(validate(k6, r6.packing).ok);
  double alpha = r6.alpha;
  double bound = 3.0 * alpha * (std::log2(6.0) + std::log2(alpha));
  CHECK(double(r6.packing.load) <= bound);
}

TEST_CASE("greedy packing spreads load across disjoint trees when they exist") {
  // two edge-disjoint depth-2 spanning trees: the 4-cycle plus both chords
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
  auto res = greedy_pack(g, 2, 2);
  CHECK(res.built == 2);
  CHECK(res.packing.load <= 2);
  CHECK(validate(g, res.packing).ok);
}

TEST_CASE("greedy packing refuses depth bounds under the graph radius") {
  // a path has exactly one spanning tree; duplicates are fine (load grows),
  // and infeasibility only comes from the depth bound: path(5) has radius 2,
  // so d = 2 works (rooted at the center) and d = 1 cannot
  Graph path = Graph::path(5);
  CHECK_THROWS_AS(greedy_pack(path, 1, 1), std::invalid_argument);
  auto center = greedy_pack(path, 1, 2);
  CHECK(center.built == 1);
  CHECK(center.packing.trees[0].root == 2);
  auto res = greedy_pack(path, 3, 4);
  CHECK(res.requested == 3);
  CHECK(res.built == 3);  // same tree thrice, load 3
  CHECK(res.packing.load == 3);
}

TEST_CASE("ft cycle cover: connectivity contract and small cliques") {
  CHECK_THROWS_AS(ft_cycle_cover(Graph::cycle(3), 1), std::invalid_argument);
  // K5 is only 4-edge-connected, so f=2 (5 paths) must be rejected
  CHECK_THROWS_AS(ft_cycle_cover(Graph::clique(5), 2), std::invalid_argument);

  Graph k4 = Graph::clique(4);
  auto cover = ft_cycle_cover(k4, 1);
  CHECK(cover.dilation == 2);
  auto check = validate_cycle_cover(k4, cover);
  CHECK(check.ok);
  CHECK(check.why.empty());

  Graph k6 = Graph::clique(6);
  auto c6 = ft_cycle_cover(k6, 2);
  CHECK(c6.dilation == 2);
  CHECK(validate_cycle_cover(k6, c6).ok);
}

TEST_CASE("cycle cover coloring: conflicts separated, bound respected") {
  Graph k4 = Graph::clique(4);
  auto cover = ft_cycle_cover(k4, 1);
  int colors = conflict_color(k4, cover);
  CHECK(colors >= 1);
  CHECK(colors <= cover.f * cover.dilation * cover.congestion + 1);
  CHECK(validate_cycle_cover(k4, cover).ok);

  Graph k6 = Graph::clique(6);
  auto c6 = ft_cycle_cover(k6, 1);
  int c6colors = conflict_color(k6, c6);
  CHECK(c6colors <= c6.f * c6.dilation * c6.congestion + 1);
  CHECK(validate_cycle_cover(k6, c6).ok);
}

TEST_CASE("cycle cover JSON round-trips") {
  Graph k4 = Graph::clique(4);
  auto cover = ft_cycle_cover(k4, 1);
  conflict_color(k4, cover);
  auto back = cycle_cover_from_json(to_json(cover));
  CHECK(validate_cycle_cover(k4, back).ok);
  CHECK(back.paths == cover.paths);
  CHECK(back.coloring == cover.coloring);
}

TEST_CASE("conductance: known values") {
  // clique K_n: phi = ceil(n/2)*floor(n/2) / (ceil(n/2)*(n-1)) = floor(n/2)/(n-1)
  CHECK(exact_conductance(Graph::clique(4)) == doctest::Approx(2.0 / 3.0));
  CHECK(exact_conductance(Graph::clique(6)) == doctest::Approx(3.0 / 5.0));
  // cycle: best cut is a half arc, 2 / (2 * n/2)
  CHECK(exact_conductance(Graph::cycle(8)) == doctest::Approx(2.0 / 8.0));
  CHECK_THROWS_AS(exact_conductance(Graph::clique(30)), std::invalid_argument);
}

TEST_CASE("expander packing: fault-free runs give all-good packings") {
  Graph k8 = Graph::clique(8);
  double phi = exact_conductance(k8);
  auto proto = expander_weak_packing(k8, 0, phi, 7);
  CHECK(proto.k == 1);  // f = 0

  net::RunConfig cfg;
  cfg.rounds = proto.rounds;
  cfg.bandwidth = proto.bandwidth;
  cfg.seed = 21;
  auto ex = net::run(k8, proto.factory, std::vector<uint64_t>(8, 0), {}, cfg);
  auto wp = assemble_weak_packing(k8, proto, ex.outputs);
  CHECK(wp.root == 7);
  CHECK(wp.good_count == proto.k);
  CHECK(wp.load <= 2);
  for (const auto& t : wp.subgraphs) {
    CHECK(is_spanning_tree(k8, t));
    CHECK(tree_depth(t) <= proto.depth_bound);
  }
}

TEST_CASE("expander packing: derived constants follow the budget formulas") {
  Graph g = Graph::random_regular(16, 8, 11);
  double phi = exact_conductance(g);
  REQUIRE(phi > 0.3);
  auto p1 = expander_weak_packing(g, 1, phi, 3);
  CHECK(p1.z == int(std::ceil(12.0 * std::log2(16.0) / phi)));
  CHECK(p1.k == 20 * p1.z);
  auto p0 = expander_weak_packing(g, 0, phi, 3);
  CHECK(p0.k == 1);
  CHECK_THROWS_AS(expander_weak_packing(g, -1, phi, 3), std::invalid_argument);
  CHECK_THROWS_AS(expander_weak_packing(g, 1, 0.0, 3), std::invalid_argument);
}

TEST_CASE("expander packing under a mobile byzantine adversary: load stays <= 2") {
  // colors-without-every-node regimes cannot span, so the mechanism is
  // exercised at an explicit k well under the min degree; the structural
  // claim (each edge serves at most its two endpoint-assigned colors) holds
  // against any adversary
  Graph g = Graph::clique(16);
  auto proto = weak_packing_protocol(g, 2, 6);
  CHECK(proto.rounds == 8);

  int good_total = 0, ruined_trials = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    net::Adversary adv;
    adv.kind = net::AdversaryKind::ByzMobile;
    adv.f = 1;
    adv.strategy = std::make_shared<net::RandomEdgesStrategy>(1, true, proto.bandwidth);
    net::RunConfig cfg;
    cfg.rounds = proto.rounds;
    cfg.bandwidth = proto.bandwidth;
    cfg.seed = 1000 + trial;
    auto ex = net::run(g, proto.factory, std::vector<uint64_t>(16, 0), adv, cfg);
    auto wp = assemble_weak_packing(g, proto, ex.outputs);
    CHECK(wp.load <= 2);
    CHECK(wp.depth_bound == proto.depth_bound);
    good_total += wp.good_count;
    if (wp.good_count == 0) ++ruined_trials;
  }
  // one random edge per round rarely lands a decisive forgery on K16
  CHECK(good_total >= 2 * trials - 6);
  CHECK(ruined_trials == 0);
}
