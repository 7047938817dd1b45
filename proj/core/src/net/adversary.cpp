#include "congesim/net/adversary.hpp"

#include <algorithm>

namespace congesim::net {

std::vector<EdgeAction> RandomEdgesStrategy::choose(const StrategyView& view) {
  int m = view.graph->edge_count();
  int take = std::min(f_, m);
  std::vector<EdgeId> picks;
  while (int(picks.size()) < take) {
    EdgeId e = EdgeId(view.rng->below(m));
    if (std::find(picks.begin(), picks.end(), e) == picks.end()) picks.push_back(e);
  }
  std::vector<EdgeAction> actions;
  for (EdgeId e : picks) {
    EdgeAction a;
    a.edge = e;
    if (byz_) {
      auto scramble = [&](int side, bool& flag, Slot& repl) {
        const Slot& sent = (*view.sent)[2 * e + side];
        if (sent) {
          flag = true;
          repl = Word{view.rng->bits(sent->width), sent->width};
        } else if (width_ > 0) {
          flag = true;
          repl = Word{view.rng->bits(width_), width_};
        }
      };
      scramble(0, a.rewrite_uv, a.uv);
      scramble(1, a.rewrite_vu, a.vu);
    }
    actions.push_back(a);
  }
  return actions;
}

}  // namespace congesim::net
