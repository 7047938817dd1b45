#include "congesim/pack/greedy_packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace congesim::pack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double weight_of(const net::Graph& g, const std::vector<double>& w, net::NodeId a, net::NodeId b) {
  return w[g.edge_id(a, b)];
}

// Exact search: cheapest tree consistent with a fixed level assignment has
// every non-root node independently picking its cheapest neighbor one level
// up, and any depth-<=d tree induces such an assignment (levels = hop
// depth), so minimizing over assignments is exact. Assignments are
// enumerated depth-first in node id order; costs are evaluated once all
// nodes have levels (n <= 9 keeps this cheap).
void enumerate_levels(const net::Graph& g, const std::vector<double>& w, int d, net::NodeId root,
                      net::NodeId v, std::vector<int>& level, double& best,
                      std::vector<int>& best_level) {
  int n = g.node_count();
  if (v == n) {
    double cost = 0;
    for (net::NodeId u = 0; u < n; ++u) {
      if (u == root) continue;
      double pick = kInf;
      for (net::NodeId nb : g.neighbors(u))
        if (level[nb] == level[u] - 1) pick = std::min(pick, weight_of(g, w, u, nb));
      cost += pick;
      if (cost >= best) return;
    }
    if (cost < best) {
      best = cost;
      best_level = level;
    }
    return;
  }
  if (v == root) {
    enumerate_levels(g, w, d, root, v + 1, level, best, best_level);
    return;
  }
  for (int l = 1; l <= d; ++l) {
    // feasibility cut: a node at level l needs some neighbor at l-1, which
    // must be either already assigned there or still free to take it later
    bool plausible = false;
    for (net::NodeId nb : g.neighbors(v)) {
      if (level[nb] == l - 1 || (level[nb] < 0 && nb > v && l > 1)) plausible = true;
      if (plausible) break;
    }
    if (!plausible) continue;
    level[v] = l;
    enumerate_levels(g, w, d, root, v + 1, level, best, best_level);
  }
  level[v] = -1;
}

RootedTree tree_from_levels(const net::Graph& g, const std::vector<double>& w,
                            const std::vector<int>& level, net::NodeId root) {
  RootedTree t;
  t.root = root;
  t.parent.assign(g.node_count(), -1);
  for (net::NodeId u = 0; u < g.node_count(); ++u) {
    if (u == root) continue;
    net::NodeId pick = -1;
    double pw = kInf;
    for (net::NodeId nb : g.neighbors(u))
      if (level[nb] == level[u] - 1 && weight_of(g, w, u, nb) < pw) {
        pw = weight_of(g, w, u, nb);
        pick = nb;
      }
    t.parent[u] = pick;
  }
  return t;
}

double tree_cost(const net::Graph& g, const std::vector<double>& w, const RootedTree& t) {
  double c = 0;
  for (net::NodeId v = 0; v < net::NodeId(t.parent.size()); ++v)
    if (v != t.root && t.parent[v] >= 0) c += weight_of(g, w, v, t.parent[v]);
  return c;
}

// cheapest edge from v to a neighbor sitting one level up; kInf when v is
// stranded under this assignment
double parent_pick(const net::Graph& g, const std::vector<double>& w,
                   const std::vector<int>& level, net::NodeId v) {
  double pick = kInf;
  for (net::NodeId nb : g.neighbors(v))
    if (level[nb] == level[v] - 1) pick = std::min(pick, weight_of(g, w, v, nb));
  return pick;
}

// coordinate descent over level assignments: moving one node deeper (or
// shallower) often unlocks a much cheaper parent edge; only the node and its
// neighbors can change cost, so moves are evaluated locally
void improve_levels(const net::Graph& g, const std::vector<double>& w, int d, net::NodeId root,
                    std::vector<int>& level) {
  int n = g.node_count();
  for (int sweep = 0; sweep < 24; ++sweep) {
    bool moved = false;
    for (net::NodeId v = 0; v < n; ++v) {
      if (v == root) continue;
      int old = level[v];
      double base = parent_pick(g, w, level, v);
      for (net::NodeId nb : g.neighbors(v))
        if (nb != root) base += parent_pick(g, w, level, nb);
      int best_l = old;
      double best_delta = -1e-12;
      for (int cand = 1; cand <= d; ++cand) {
        if (cand == old) continue;
        level[v] = cand;
        double cost = parent_pick(g, w, level, v);
        for (net::NodeId nb : g.neighbors(v)) {
          if (nb == root) continue;
          cost += parent_pick(g, w, level, nb);
          if (cost == kInf) break;
        }
        if (cost - base < best_delta) {
          best_delta = cost - base;
          best_l = cand;
        }
      }
      level[v] = best_l;
      if (best_l != old) moved = true;
    }
    if (!moved) break;
  }
}

}  // namespace

// Heuristic: start from BFS hop levels (which certify feasibility exactly),
// then locally re-level nodes toward cheaper parents.
MinCostTree layered_depth_tree(const net::Graph& g, const std::vector<double>& w, int d) {
  if (int(w.size()) != g.edge_count())
    throw std::invalid_argument("min-cost depth tree: one weight per edge required");
  if (d < 1) throw std::invalid_argument("min-cost depth tree: need d >= 1");
  MinCostTree best;
  best.cost = kInf;
  for (net::NodeId root = 0; root < g.node_count(); ++root) {
    std::vector<int> level(g.node_count(), -1);
    std::queue<net::NodeId> q;
    q.push(root);
    level[root] = 0;
    int deepest = 0;
    while (!q.empty()) {
      net::NodeId v = q.front();
      q.pop();
      for (net::NodeId nb : g.neighbors(v))
        if (level[nb] < 0) {
          level[nb] = level[v] + 1;
          deepest = std::max(deepest, level[nb]);
          q.push(nb);
        }
    }
    if (deepest > d || *std::min_element(level.begin(), level.end()) < 0) continue;
    improve_levels(g, w, d, root, level);
    RootedTree t = tree_from_levels(g, w, level, root);
    double c = tree_cost(g, w, t);
    if (c < best.cost) {
      best.tree = t;
      best.cost = c;
      best.depth = *std::max_element(level.begin(), level.end());
    }
  }
  if (best.cost == kInf)
    throw std::invalid_argument("min-cost depth tree: no spanning tree within depth bound");
  best.exact = false;
  best.alpha = kLayeredHeuristicAlpha;
  return best;
}

MinCostTree min_cost_depth_tree(const net::Graph& g, const std::vector<double>& edge_weights,
                                int d) {
  if (int(edge_weights.size()) != g.edge_count())
    throw std::invalid_argument("min-cost depth tree: one weight per edge required");
  if (d < 1) throw std::invalid_argument("min-cost depth tree: need d >= 1");
  if (g.node_count() > 9) return layered_depth_tree(g, edge_weights, d);

  MinCostTree best;
  best.cost = kInf;
  int dd = std::min(d, g.node_count() - 1);
  for (net::NodeId root = 0; root < g.node_count(); ++root) {
    std::vector<int> level(g.node_count(), -1), best_level;
    level[root] = 0;
    double cost = kInf;
    enumerate_levels(g, edge_weights, dd, root, 0, level, cost, best_level);
    if (cost < best.cost) {
      best.cost = cost;
      best.tree = tree_from_levels(g, edge_weights, best_level, root);
      best.depth = *std::max_element(best_level.begin(), best_level.end());
    }
  }
  if (best.cost == kInf)
    throw std::invalid_argument("min-cost depth tree: no spanning tree within depth bound");
  best.exact = true;
  best.alpha = 1.0;
  return best;
}

GreedyPackResult greedy_pack(const net::Graph& g, int k, int d) {
  if (k < 1) throw std::invalid_argument("greedy pack: need k >= 1");
  GreedyPackResult res;
  res.requested = k;
  res.alpha = g.node_count() <= 9 ? 1.0 : kLayeredHeuristicAlpha;
  double a = (res.alpha + 2) / (res.alpha + 1);
  res.weight_base = a;

  std::vector<int> load(g.edge_count(), 0);
  std::vector<RootedTree> trees;
  int depth_seen = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<double> w(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e)
      w[e] = std::pow(a, load[e] + 1) - std::pow(a, load[e]);
    MinCostTree t;
    try {
      t = min_cost_depth_tree(g, w, d);
    } catch (const std::invalid_argument&) {
      if (i == 0) throw;
      break;  // report the deficit instead of emitting malformed trees
    }
    for (net::NodeId v = 0; v < g.node_count(); ++v)
      if (v != t.tree.root && t.tree.parent[v] >= 0) ++load[g.edge_id(v, t.tree.parent[v])];
    depth_seen = std::max(depth_seen, t.depth);
    trees.push_back(std::move(t.tree));
  }
  res.built = int(trees.size());

  // re-root everything at the first tree's root so the packing has a common
  // root; a depth-d tree re-rooted at another of its nodes stays within 2d
  net::NodeId common = trees.front().root;
  for (auto& t : trees) {
    if (t.root == common) continue;
    std::vector<net::NodeId> np(t.parent.size(), -1);
    // invert the path from `common` up to the old root
    net::NodeId cur = common, prev = -1;
    while (cur != -1) {
      net::NodeId up = cur == t.root ? -1 : t.parent[cur];
      np[cur] = prev;
      prev = cur;
      cur = up;
    }
    for (net::NodeId v = 0; v < net::NodeId(t.parent.size()); ++v)
      if (np[v] == -1 && v != common) np[v] = t.parent[v];
    t.parent = np;
    t.root = common;
  }

  res.packing.trees = trees;
  res.packing.root = common;
  res.packing.depth_bound = 0;
  for (const auto& t : res.packing.trees)
    res.packing.depth_bound = std::max(res.packing.depth_bound, tree_depth(t));
  res.packing.load = packing_load(g, res.packing.trees);
  return res;
}

}  // namespace congesim::pack
