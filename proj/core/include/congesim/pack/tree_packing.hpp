#pragma once

#include <string>
#include <vector>

#include "congesim/net/graph.hpp"

// Rooted tree packings: the preprocessing substrate the resilient compilers
// consume. Every constructor's output must pass validate(), which re-derives
// span, depth, root, and load from the parent maps alone.

namespace congesim::pack {

struct RootedTree {
  net::NodeId root = 0;
  std::vector<net::NodeId> parent;  // parent[root] = -1

  std::vector<std::vector<net::NodeId>> children() const;
};

struct TreePacking {
  std::vector<RootedTree> trees;
  net::NodeId root = 0;  // common root of all trees
  int depth_bound = 0;   // measured max depth over trees
  int load = 0;          // measured max per-edge multiplicity
};

// Parent maps that may fail to be trees; good_count tracks how many validate
// as depth-bounded spanning trees rooted at root.
struct WeakTreePacking {
  std::vector<RootedTree> subgraphs;
  net::NodeId root = 0;
  int good_count = 0;
  int depth_bound = 0;
  int load = 0;
};

// True iff parent edges exist in g, every node reaches root, no node is its
// own ancestor.
bool is_spanning_tree(const net::Graph& g, const RootedTree& t);

// Max hop distance to the root; requires a valid tree.
int tree_depth(const RootedTree& t);

// Max number of trees any single edge of g appears in.
int packing_load(const net::Graph& g, const std::vector<RootedTree>& trees);

struct PackingCheck {
  bool ok = false;
  std::string why;
};

// Re-derives all claimed invariants of the packing from scratch.
PackingCheck validate(const net::Graph& g, const TreePacking& p);

// Recomputes good_count / load of a weak packing from the parent maps.
WeakTreePacking revalidate_weak(const net::Graph& g, WeakTreePacking p);

// View a validated packing as a weak one (every subgraph good).
WeakTreePacking as_weak(const TreePacking& p);

// JSON round-trip (parent maps), for reuse as trusted preprocessing input.
std::string to_json(const TreePacking& p);
TreePacking tree_packing_from_json(const std::string& text);

}  // namespace congesim::pack
