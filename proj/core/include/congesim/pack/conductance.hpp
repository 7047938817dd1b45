#pragma once

#include "congesim/net/graph.hpp"

namespace congesim::pack {

// Exact graph conductance min_S cut(S, S~) / min(vol(S), vol(S~)) by subset
// enumeration; throws std::invalid_argument beyond 24 nodes. Used to certify
// generated expander instances.
double exact_conductance(const net::Graph& g);

// Sweep-cut conductance: power iteration approximates the Fiedler vector,
// then the best prefix cut along it is returned. The value is the measured
// conductance of a concrete cut, so it upper-bounds the graph conductance.
// Works at any size; used where exact enumeration is out of reach.
double sweep_conductance(const net::Graph& g, int iterations = 200);

}  // namespace congesim::pack
