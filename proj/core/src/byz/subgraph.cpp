#include "congesim/byz/subgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace congesim::byz {

std::vector<net::EdgeId> subgraph_edges(const net::Graph& g, const pack::RootedTree& t) {
  if (int(t.parent.size()) != g.node_count())
    throw std::invalid_argument("subgraph: parent map size differs from the graph");
  std::vector<net::EdgeId> edges;
  for (net::NodeId v = 0; v < g.node_count(); ++v) {
    if (t.parent[v] < 0 || t.parent[v] >= g.node_count() || t.parent[v] == v) continue;
    net::EdgeId e = g.edge_id(v, t.parent[v]);
    if (e >= 0 && std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
  }
  return edges;
}

std::vector<char> subgraph_reachable(const net::Graph& g, const pack::RootedTree& t) {
  if (int(t.parent.size()) != g.node_count())
    throw std::invalid_argument("subgraph: parent map size differs from the graph");
  std::vector<char> seen(g.node_count(), 0);
  if (t.root < 0 || t.root >= g.node_count()) return seen;
  std::vector<std::vector<net::NodeId>> kids(g.node_count());
  for (net::NodeId v = 0; v < g.node_count(); ++v)
    if (v != t.root && t.parent[v] >= 0 && t.parent[v] < g.node_count() && t.parent[v] != v)
      kids[t.parent[v]].push_back(v);
  std::vector<net::NodeId> queue = {t.root};
  seen[t.root] = 1;
  while (!queue.empty()) {
    net::NodeId v = queue.back();
    queue.pop_back();
    for (net::NodeId c : kids[v]) {
      if (seen[c] || g.edge_id(v, c) < 0) continue;
      seen[c] = 1;
      queue.push_back(c);
    }
  }
  return seen;
}

}  // namespace congesim::byz
