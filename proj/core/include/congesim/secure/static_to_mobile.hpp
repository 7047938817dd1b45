#pragma once

#include <vector>

#include "congesim/net/graph.hpp"
#include "congesim/net/program.hpp"
#include "congesim/secure/key_schedule.hpp"

// Static-secure to mobile-secure compilation.
//
// The compiled program spends exchange_rounds(r, t) rounds deriving one-time
// pads, then replays the wrapped protocol with every message encrypted under
// its edge's next key. Round count is exactly 2r + t; outputs equal the
// wrapped protocol's outputs on every run (eavesdroppers never alter
// delivery). If the wrapped protocol is f-static-secure, the compilation is
// mobile_budget(f, r, t)-mobile-secure.

namespace congesim::secure {

// traffic[i] = directed edges on which the wrapped protocol may send in its
// round i. The declaration trims the exchange (silent directions derive no
// keys) and indexes keys by use order; sending outside it is an error.
using TrafficSchedule = std::vector<std::vector<net::DirEdgeId>>;

struct MobileCompiled {
  net::ProgramFactory factory;
  int rounds = 0;           // 2r + t
  int exchange_rounds = 0;  // r + t
  int f_mobile = 0;         // mobile_budget(f, r, t)
  int key_bits = 0;
};

// Empty traffic means the full schedule (every directed edge, every round).
MobileCompiled compile_static_to_mobile(const net::ProgramFactory& inner, const SecureParams& p,
                                        const net::Graph& g, const TrafficSchedule& traffic = {});

}  // namespace congesim::secure
