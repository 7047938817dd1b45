#pragma once

#include <vector>

#include "congesim/net/graph.hpp"
#include "congesim/pack/tree_packing.hpp"

// Helpers over weak-packing subgraphs. A subgraph is a parent map that may
// fail to be a tree: parent edges can be missing from the graph and cycles
// can occur, so consumers work on the portion reachable from the root and
// treat the rest as absent.

namespace congesim::byz {

// Parent edges that exist in g, deduplicated.
std::vector<net::EdgeId> subgraph_edges(const net::Graph& g, const pack::RootedTree& t);

// reachable[v] true iff v is connected to t.root by existing parent edges.
std::vector<char> subgraph_reachable(const net::Graph& g, const pack::RootedTree& t);

}  // namespace congesim::byz
