#pragma once

#include <vector>

#include "congesim/net/graph.hpp"

// Edge connectivity and length-bounded connectivity checks, exact at desk
// scale.

namespace congesim::pack {

// Maximum number of pairwise edge-disjoint u-v paths (= local edge
// connectivity), via augmenting paths on the antiparallel-arc network.
// Shortest augmentation first, so the witness paths stay short.
int local_edge_connectivity(const net::Graph& g, net::NodeId u, net::NodeId v);

// Witness version: returns a maximum set of pairwise edge-disjoint u-v paths
// (each a node sequence u..v), shortest-first.
std::vector<std::vector<net::NodeId>> edge_disjoint_paths(const net::Graph& g, net::NodeId u,
                                                          net::NodeId v);

// Global edge connectivity: min over v != 0 of local connectivity(0, v).
int edge_connectivity(const net::Graph& g);

bool is_k_edge_connected(const net::Graph& g, int k);

// True iff every node pair admits k pairwise edge-disjoint paths of length
// <= d. Length-bounded disjoint paths do not reduce to a plain max-flow, so
// this enumerates candidate paths and searches for a disjoint k-subset;
// throws std::runtime_error when the instance is too large for that
// (candidate paths per pair capped at 20000).
bool kd_connectivity_check(const net::Graph& g, int k, int d);

}  // namespace congesim::pack
