#include "congesim/pack/star_packing.hpp"

#include <stdexcept>

namespace congesim::pack {

TreePacking clique_star_packing(int n) {
  if (n < 2) throw std::invalid_argument("star packing: need n >= 2");
  TreePacking p;
  p.root = 0;
  p.depth_bound = n == 2 ? 1 : 2;
  p.load = 2;
  for (net::NodeId center = 0; center < n; ++center) {
    RootedTree t;
    t.root = 0;
    t.parent.assign(n, center);
    t.parent[0] = -1;
    if (center != 0) t.parent[center] = 0;  // hang the center off the root
    p.trees.push_back(std::move(t));
  }
  return p;
}

}  // namespace congesim::pack
