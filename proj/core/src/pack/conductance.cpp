#include "congesim/pack/conductance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace congesim::pack {

double exact_conductance(const net::Graph& g) {
  int n = g.node_count();
  if (n < 2) throw std::invalid_argument("conductance: need at least 2 nodes");
  if (n > 24) throw std::invalid_argument("conductance: exact enumeration capped at 24 nodes");
  int total_vol = 2 * g.edge_count();
  double best = 1.0;
  // fix node 0 out of S to halve the enumeration
  for (uint32_t mask = 1; mask < (uint32_t(1) << (n - 1)); ++mask) {
    uint32_t s = mask << 1;
    int vol = 0, cut = 0;
    for (int v = 1; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      vol += g.degree(v);
      for (net::NodeId w : g.neighbors(v))
        if (!(s >> w & 1)) ++cut;
    }
    int small = std::min(vol, total_vol - vol);
    if (small == 0) continue;
    best = std::min(best, double(cut) / double(small));
  }
  return best;
}

double sweep_conductance(const net::Graph& g, int iterations) {
  int n = g.node_count();
  if (n < 2) throw std::invalid_argument("conductance: need at least 2 nodes");
  int total_vol = 2 * g.edge_count();
  if (total_vol == 0) return 0.0;

  // power iteration on the lazy walk matrix, deflating the stationary
  // component, converges to the Fiedler direction of the normalized Laplacian
  std::vector<double> x(n), next(n);
  for (int v = 0; v < n; ++v) x[v] = (v % 2 == 0) ? 1.0 : -1.0;
  std::vector<double> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = double(g.degree(v));
  for (int it = 0; it < iterations; ++it) {
    double dot = 0;
    for (int v = 0; v < n; ++v) dot += x[v] * deg[v];
    for (int v = 0; v < n; ++v) x[v] -= dot / double(total_vol);
    for (int v = 0; v < n; ++v) {
      double acc = 0.5 * x[v];
      if (deg[v] > 0) {
        double share = 0.5 / deg[v];
        for (net::NodeId w : g.neighbors(v)) acc += share * x[w];
      }
      next[v] = acc;
    }
    double norm = 0;
    for (double val : next) norm += val * val;
    norm = std::sqrt(norm);
    if (norm < 1e-30) {
      for (int v = 0; v < n; ++v) next[v] = (v % 3 == 0) ? 1.0 : -0.5;
      norm = 1.0;
    }
    for (int v = 0; v < n; ++v) x[v] = next[v] / norm;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });

  std::vector<char> in_s(n, 0);
  double best = 1.0;
  int vol = 0, cut = 0;
  for (int i = 0; i + 1 < n; ++i) {
    int v = order[i];
    in_s[v] = 1;
    vol += g.degree(v);
    for (net::NodeId w : g.neighbors(v)) cut += in_s[w] ? -1 : 1;
    int small = std::min(vol, total_vol - vol);
    if (small == 0) continue;
    best = std::min(best, double(cut) / double(small));
  }
  return best;
}

}  // namespace congesim::pack
