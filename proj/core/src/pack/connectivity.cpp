#include "congesim/pack/connectivity.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>

namespace congesim::pack {

namespace {

// Undirected unit-capacity flow via antiparallel arcs with eager
// cancellation: per-arc flow is 0/1 and never 1 in both directions of an
// edge, so an arc is residual-available exactly when its own flow is 0.
struct UnitFlow {
  const net::Graph* g;
  std::vector<int> flow;  // per directed edge, 0 or 1

  explicit UnitFlow(const net::Graph& graph) : g(&graph), flow(graph.dir_edge_count(), 0) {}

  // BFS for a shortest residual path, returns node sequence or empty.
  std::vector<net::NodeId> augment(net::NodeId s, net::NodeId t) {
    std::vector<net::NodeId> prev(g->node_count(), -1);
    std::vector<bool> seen(g->node_count(), false);
    std::queue<net::NodeId> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty() && !seen[t]) {
      net::NodeId v = q.front();
      q.pop();
      for (net::NodeId w : g->neighbors(v)) {
        if (seen[w] || flow[g->dir_edge_id(v, w)]) continue;
        seen[w] = true;
        prev[w] = v;
        q.push(w);
      }
    }
    if (!seen[t]) return {};
    std::vector<net::NodeId> path;
    for (net::NodeId v = t; v != -1; v = prev[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      int d = g->dir_edge_id(path[i], path[i + 1]);
      if (flow[d ^ 1])
        flow[d ^ 1] = 0;  // cancellation
      else
        flow[d] = 1;
    }
    return path;
  }
};

// Decompose a set of flow-carrying arcs into arc-disjoint s-t walks; with
// antiparallel cancellation applied these are simple-enough paths for use as
// witnesses (each undirected edge appears in at most one path).
std::vector<std::vector<net::NodeId>> decompose(const net::Graph& g, std::vector<int> used,
                                                net::NodeId s, net::NodeId t, int flow) {
  std::vector<std::vector<net::NodeId>> paths;
  for (int i = 0; i < flow; ++i) {
    std::vector<net::NodeId> path{s};
    net::NodeId v = s;
    while (v != t) {
      net::NodeId next = -1;
      for (net::NodeId w : g.neighbors(v)) {
        int d = g.dir_edge_id(v, w);
        if (used[d]) {
          used[d] = 0;
          next = w;
          break;
        }
      }
      if (next == -1) throw std::runtime_error("flow decomposition: dead end");
      path.push_back(next);
      v = next;
    }
    // strip flow cycles picked up along the walk so the witness is simple
    std::vector<net::NodeId> simple;
    std::vector<int> pos(g.node_count(), -1);
    for (net::NodeId n : path) {
      if (pos[n] >= 0) {
        while (int(simple.size()) > pos[n] + 1) {
          pos[simple.back()] = -1;
          simple.pop_back();
        }
        continue;
      }
      pos[n] = int(simple.size());
      simple.push_back(n);
    }
    paths.push_back(std::move(simple));
  }
  return paths;
}

}  // namespace

int local_edge_connectivity(const net::Graph& g, net::NodeId u, net::NodeId v) {
  if (u == v) throw std::invalid_argument("connectivity: identical endpoints");
  UnitFlow fl(g);
  int flow = 0;
  while (!fl.augment(u, v).empty()) ++flow;
  return flow;
}

std::vector<std::vector<net::NodeId>> edge_disjoint_paths(const net::Graph& g, net::NodeId u,
                                                          net::NodeId v) {
  if (u == v) throw std::invalid_argument("connectivity: identical endpoints");
  UnitFlow fl(g);
  int flow = 0;
  while (!fl.augment(u, v).empty()) ++flow;
  return decompose(g, fl.flow, u, v, flow);
}

int edge_connectivity(const net::Graph& g) {
  if (g.node_count() < 2) return 0;
  int best = INT32_MAX;
  for (net::NodeId v = 1; v < g.node_count(); ++v)
    best = std::min(best, local_edge_connectivity(g, 0, v));
  return best;
}

bool is_k_edge_connected(const net::Graph& g, int k) { return edge_connectivity(g) >= k; }

namespace {

void enumerate_paths(const net::Graph& g, net::NodeId v, net::NodeId t, int budget,
                     std::vector<net::NodeId>& stack, std::vector<bool>& on_stack,
                     std::vector<std::vector<net::NodeId>>& out, size_t cap) {
  if (out.size() > cap) return;
  if (v == t) {
    out.push_back(stack);
    return;
  }
  if (budget == 0) return;
  for (net::NodeId w : g.neighbors(v)) {
    if (on_stack[w]) continue;
    stack.push_back(w);
    on_stack[w] = true;
    enumerate_paths(g, w, t, budget - 1, stack, on_stack, out, cap);
    on_stack[w] = false;
    stack.pop_back();
  }
}

using EdgeMask = std::vector<uint64_t>;

EdgeMask path_mask(const net::Graph& g, const std::vector<net::NodeId>& path) {
  EdgeMask m((g.edge_count() + 63) / 64, 0);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    int e = g.edge_id(path[i], path[i + 1]);
    m[e / 64] |= uint64_t(1) << (e % 64);
  }
  return m;
}

bool disjoint(const EdgeMask& a, const EdgeMask& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

bool pick_disjoint(const std::vector<EdgeMask>& masks, size_t from, int k, EdgeMask& acc) {
  if (k == 0) return true;
  if (masks.size() - from < size_t(k)) return false;
  for (size_t i = from; i < masks.size(); ++i) {
    if (!disjoint(acc, masks[i])) continue;
    for (size_t w = 0; w < acc.size(); ++w) acc[w] |= masks[i][w];
    if (pick_disjoint(masks, i + 1, k - 1, acc)) return true;
    for (size_t w = 0; w < acc.size(); ++w) acc[w] &= ~masks[i][w];
  }
  return false;
}

}  // namespace

bool kd_connectivity_check(const net::Graph& g, int k, int d) {
  if (k < 1 || d < 1) throw std::invalid_argument("kd connectivity: need k, d >= 1");
  constexpr size_t kPathCap = 20000;
  for (net::NodeId u = 0; u < g.node_count(); ++u)
    for (net::NodeId v = u + 1; v < g.node_count(); ++v) {
      // quick negative: ignore the length bound
      if (local_edge_connectivity(g, u, v) < k) return false;
      std::vector<std::vector<net::NodeId>> cand;
      std::vector<net::NodeId> stack{u};
      std::vector<bool> on_stack(g.node_count(), false);
      on_stack[u] = true;
      enumerate_paths(g, u, v, d, stack, on_stack, cand, kPathCap);
      if (cand.size() > kPathCap)
        throw std::runtime_error("kd connectivity: too many candidate paths for exact check");
      std::sort(cand.begin(), cand.end(),
                [](const auto& a, const auto& b) { return a.size() < b.size(); });
      std::vector<EdgeMask> masks;
      masks.reserve(cand.size());
      for (const auto& p : cand) masks.push_back(path_mask(g, p));
      EdgeMask acc((g.edge_count() + 63) / 64, 0);
      if (!pick_disjoint(masks, 0, k, acc)) return false;
    }
  return true;
}

}  // namespace congesim::pack
