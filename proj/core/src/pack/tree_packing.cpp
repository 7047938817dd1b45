#include "congesim/pack/tree_packing.hpp"

#include <algorithm>

#include "json.hpp"

namespace congesim::pack {

std::vector<std::vector<net::NodeId>> RootedTree::children() const {
  std::vector<std::vector<net::NodeId>> ch(parent.size());
  for (net::NodeId v = 0; v < net::NodeId(parent.size()); ++v)
    if (v != root && parent[v] >= 0) ch[parent[v]].push_back(v);
  return ch;
}

bool is_spanning_tree(const net::Graph& g, const RootedTree& t) {
  int n = g.node_count();
  if (int(t.parent.size()) != n) return false;
  if (t.root < 0 || t.root >= n || t.parent[t.root] != -1) return false;
  for (net::NodeId v = 0; v < n; ++v) {
    if (v == t.root) continue;
    if (t.parent[v] < 0 || t.parent[v] >= n) return false;
    if (!g.has_edge(v, t.parent[v])) return false;
  }
  // every node must reach the root without revisiting
  for (net::NodeId v = 0; v < n; ++v) {
    net::NodeId cur = v;
    int steps = 0;
    while (cur != t.root) {
      cur = t.parent[cur];
      if (++steps > n) return false;  // cycle
    }
  }
  return true;
}

int tree_depth(const RootedTree& t) {
  int depth = 0;
  for (net::NodeId v = 0; v < net::NodeId(t.parent.size()); ++v) {
    net::NodeId cur = v;
    int d = 0;
    while (cur != t.root) {
      cur = t.parent[cur];
      ++d;
    }
    depth = std::max(depth, d);
  }
  return depth;
}

int packing_load(const net::Graph& g, const std::vector<RootedTree>& trees) {
  std::vector<int> mult(g.edge_count(), 0);
  for (const auto& t : trees)
    for (net::NodeId v = 0; v < net::NodeId(t.parent.size()); ++v) {
      if (v == t.root || t.parent[v] < 0) continue;
      int e = g.edge_id(v, t.parent[v]);
      if (e >= 0) ++mult[e];
    }
  int load = 0;
  for (int m : mult) load = std::max(load, m);
  return load;
}

PackingCheck validate(const net::Graph& g, const TreePacking& p) {
  if (p.trees.empty()) return {false, "no trees"};
  for (size_t i = 0; i < p.trees.size(); ++i) {
    const auto& t = p.trees[i];
    if (t.root != p.root) return {false, "tree " + std::to_string(i) + ": wrong root"};
    if (!is_spanning_tree(g, t))
      return {false, "tree " + std::to_string(i) + ": not a spanning tree"};
    if (tree_depth(t) > p.depth_bound)
      return {false, "tree " + std::to_string(i) + ": exceeds depth bound"};
  }
  if (packing_load(g, p.trees) > p.load) return {false, "load exceeds claim"};
  return {true, ""};
}

WeakTreePacking as_weak(const TreePacking& p) {
  WeakTreePacking w;
  w.subgraphs = p.trees;
  w.root = p.root;
  w.good_count = int(p.trees.size());
  w.depth_bound = p.depth_bound;
  w.load = p.load;
  return w;
}

WeakTreePacking revalidate_weak(const net::Graph& g, WeakTreePacking p) {
  p.good_count = 0;
  for (const auto& t : p.subgraphs)
    if (t.root == p.root && is_spanning_tree(g, t) && tree_depth(t) <= p.depth_bound)
      ++p.good_count;
  p.load = packing_load(g, p.subgraphs);
  return p;
}

std::string to_json(const TreePacking& p) {
  nlohmann::json j;
  j["root"] = p.root;
  j["depth_bound"] = p.depth_bound;
  j["load"] = p.load;
  auto& trees = j["trees"] = nlohmann::json::array();
  for (const auto& t : p.trees) trees.push_back(t.parent);
  return j.dump(2);
}

TreePacking tree_packing_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  TreePacking p;
  p.root = j.at("root").get<net::NodeId>();
  p.depth_bound = j.at("depth_bound").get<int>();
  p.load = j.at("load").get<int>();
  for (const auto& tj : j.at("trees")) {
    RootedTree t;
    t.root = p.root;
    t.parent = tj.get<std::vector<net::NodeId>>();
    p.trees.push_back(std::move(t));
  }
  return p;
}

}  // namespace congesim::pack
