#pragma once

#include "congesim/pack/tree_packing.hpp"

namespace congesim::pack {

// The clique packing: n stars, star i centered at node i, all re-rooted at
// node 0. Diameter and load are exactly 2 (depth 1 for the star centered at
// the root itself).
TreePacking clique_star_packing(int n);

}  // namespace congesim::pack
