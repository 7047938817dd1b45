#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Undirected simple graphs with stable edge ids.
//
// Nodes are 0..n-1 and double as CONGEST node identifiers (every node knows
// its neighbors' ids). Edges are stored sorted lexicographically as (u,v)
// with u < v; EdgeId is the index into that order. A directed edge is
// addressed as 2*edge + side, side 0 meaning u->v and side 1 meaning v->u.

namespace congesim::net {

using NodeId = int;
using EdgeId = int;
using DirEdgeId = int;

struct Edge {
  NodeId u, v;  // u < v
};

class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<NodeId, NodeId>> edges);

  int node_count() const { return n_; }
  int edge_count() const { return int(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
  int degree(NodeId v) const { return int(adj_[v].size()); }

  bool has_edge(NodeId u, NodeId v) const { return edge_id(u, v) >= 0; }
  // -1 when absent.
  EdgeId edge_id(NodeId u, NodeId v) const;
  // Directed edge id for the ordered pair (from, to); throws if absent.
  DirEdgeId dir_edge_id(NodeId from, NodeId to) const;
  static EdgeId edge_of(DirEdgeId d) { return d / 2; }
  NodeId dir_source(DirEdgeId d) const;
  NodeId dir_target(DirEdgeId d) const;
  int dir_edge_count() const { return 2 * edge_count(); }

  bool connected() const;

  // Text form: one "u v" pair per line, comments with '#'.
  static Graph parse_edge_list(const std::string& text);
  std::string to_edge_list() const;

  static Graph clique(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  // Uniform-ish random d-regular graph by configuration model with restarts.
  static Graph random_regular(int n, int d, uint64_t seed);

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> inc_;  // sorted by neighbor
};

}  // namespace congesim::net
