#pragma once

#include <string>
#include <vector>

#include "congesim/net/graph.hpp"

// Fault-tolerant cycle covers: for every edge (u,v), a system of pairwise
// edge-disjoint u-v paths that includes the edge itself. Compilers replicate
// each message over all paths of the edge's system; the conflict coloring
// groups edges whose systems can be simulated simultaneously.

namespace congesim::pack {

using Path = std::vector<net::NodeId>;

struct CycleCover {
  int f = 0;
  // per EdgeId: 2f+1 pairwise edge-disjoint u-v paths, [0] the edge itself
  std::vector<std::vector<Path>> paths;
  int dilation = 0;    // max path length (edges)
  int congestion = 0;  // max over edges of total path multiplicity
  std::vector<int> coloring;  // per EdgeId, filled by conflict_color
  int colors = 0;
};

// Requires (2f+1)-edge-connectivity; throws std::invalid_argument otherwise.
CycleCover ft_cycle_cover(const net::Graph& g, int f);

// Greedy coloring of the edge conflict graph (systems sharing an edge
// conflict), followed by a class-merging pass. Returns the color count and
// fills cover.coloring/cover.colors.
int conflict_color(const net::Graph& g, CycleCover& cover);

struct CoverCheck {
  bool ok = false;
  std::string why;
};

// Re-derives every invariant: path endpoints, edge existence, disjointness
// within systems, measured dilation/congestion, and (if colored) that
// same-colored systems are pairwise edge-disjoint.
CoverCheck validate_cycle_cover(const net::Graph& g, const CycleCover& cover);

std::string to_json(const CycleCover& cover);
CycleCover cycle_cover_from_json(const std::string& text);

}  // namespace congesim::pack
